"""Flow pattern and alley attractiveness.

The flow matrix counts directed traversals of every link over a batch of
static trajectories.  The attractiveness index scales it by its maximum.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import AllZeroFlow, InvalidTrajectoryInBatch, NonPositiveMaxRent
from .netmodel import WalkwayGraph
from .stats import DescriptiveStats, describe
from .trajectory import (
    NtxyRecord,
    StaticTrajectory,
    map_match,
    reduce_ntxy,
    snap_points,
    validate_trajectory,
)

CATEGORIES = ("low", "medium", "high", "very_high")


@dataclass(frozen=True, eq=False)
class FlowMatrix:
    F: np.ndarray
    graph: WalkwayGraph
    study_label: str = ""

    @property
    def total(self) -> int:
        return int(self.F.sum())

    def __add__(self, other: "FlowMatrix") -> "FlowMatrix":
        if other.F.shape != self.F.shape:
            raise ValueError("flow matrices belong to different venues")
        return FlowMatrix(self.F + other.F, self.graph, self.study_label)


@dataclass(frozen=True, eq=False)
class AlphaMatrix:
    alpha: np.ndarray
    max_flow: int
    graph: WalkwayGraph


@dataclass(frozen=True)
class AlleyTotal:
    source: str
    target: str
    total: int


@dataclass(frozen=True)
class Thresholds:
    low: float
    mid: float
    high: float

    def __post_init__(self):
        if not self.low <= self.mid <= self.high:
            raise ValueError(f"thresholds must be non-decreasing, got {self}")

    def classify(self, total: float) -> str:
        # ties go to the lower category
        if total <= self.low:
            return "low"
        if total <= self.mid:
            return "medium"
        if total <= self.high:
            return "high"
        return "very_high"


@dataclass(frozen=True)
class AlleyCategory:
    source: str
    target: str
    total: int
    category: str


def accumulate_flow(
    trajectories: Iterable[StaticTrajectory],
    graph: WalkwayGraph,
    study_label: str = "",
) -> FlowMatrix:
    """Add one to ``F[origin, destination]`` for every link of every trajectory.

    The whole batch is checked before anything is counted; one invalid route
    raises :class:`InvalidTrajectoryInBatch` naming the respondent.
    """
    trajectories = list(trajectories)
    for traj in trajectories:
        check = validate_trajectory(traj, graph)
        if not check.valid:
            raise InvalidTrajectoryInBatch(traj.respondent_id, check.reasons)

    F = np.zeros((graph.n, graph.n), dtype=np.int64)
    for traj in trajectories:
        idx = [graph.index[v] for v in traj.nodes]
        np.add.at(F, (idx[:-1], idx[1:]), 1)
    return FlowMatrix(F, graph, study_label)


def merge_flows(parts: Sequence[FlowMatrix]) -> FlowMatrix:
    """Elementwise sum of shard results."""
    if not parts:
        raise ValueError("nothing to merge")
    out = parts[0]
    for part in parts[1:]:
        out = out + part
    return out


def attractiveness_index(flow: FlowMatrix) -> AlphaMatrix:
    peak = int(flow.F.max())
    if peak <= 0:
        raise AllZeroFlow("flow matrix is all zeros")
    return AlphaMatrix(flow.F / peak, peak, flow.graph)


def alley_totals(flow: FlowMatrix) -> list[AlleyTotal]:
    """Both directions of every alley summed, in sorted alley order."""
    F, g = flow.F, flow.graph
    return [
        AlleyTotal(g.nodes[i].id, g.nodes[j].id, int(F[i, j] + F[j, i]))
        for i, j in g.alleys()
    ]


def quartile_thresholds(totals: Sequence[AlleyTotal]) -> Thresholds:
    nonzero = np.array([a.total for a in totals if a.total > 0], dtype=float)
    if nonzero.size == 0:
        return Thresholds(0.0, 0.0, 0.0)
    q1, q2, q3 = np.percentile(nonzero, [25, 50, 75])
    return Thresholds(float(q1), float(q2), float(q3))


def categorize_flows(
    totals: Sequence[AlleyTotal],
    thresholds: Thresholds | None = None,
) -> tuple[list[AlleyCategory], Thresholds]:
    """Four-way split of alley totals, by default at quartiles of non-zero totals.

    Alleys with no traffic are always ``low``.
    """
    if not totals:
        raise ValueError("no alleys to categorize")
    if thresholds is None:
        thresholds = quartile_thresholds(totals)
    cats = [
        AlleyCategory(a.source, a.target, a.total,
                      "low" if a.total == 0 else thresholds.classify(a.total))
        for a in totals
    ]
    return cats, thresholds


def link_alphas(alpha: AlphaMatrix) -> np.ndarray:
    """Index values on every directed link, zero-flow links included."""
    return alpha.alpha[alpha.graph.A.astype(bool)]


def attractiveness_stats(alpha: AlphaMatrix, bin_width: float = 0.02) -> DescriptiveStats:
    return describe(link_alphas(alpha), bin_width)


def relative_rents(alpha: AlphaMatrix, max_rent: float) -> np.ndarray:
    if not max_rent > 0 or not math.isfinite(max_rent):
        raise NonPositiveMaxRent(f"max rent must be a positive number, got {max_rent}")
    return alpha.alpha * max_rent


def sliced_flow(
    records: Iterable[NtxyRecord],
    graph: WalkwayGraph,
    slice_seconds: float,
) -> dict[int, np.ndarray]:
    """Time-sliced flow from timestamped positions.

    Each pedestrian's positions are snapped to nodes in time order; a move
    between consecutive distinct nodes is counted in the slice containing the
    arrival time.  Moves must follow links.
    """
    if not slice_seconds > 0:
        raise ValueError("slice length must be positive")
    by_ped: dict[str, list[NtxyRecord]] = defaultdict(list)
    for rec in records:
        by_ped[rec.n].append(rec)

    slices: dict[int, np.ndarray] = {}
    for ped in sorted(by_ped):
        recs = sorted(by_ped[ped], key=lambda r: r.t)
        snapped = snap_points([(r.x, r.y) for r in recs], graph)
        prev = None
        for pos, (rec, k) in enumerate(zip(recs, snapped)):
            if prev is not None and k != prev:
                if not graph.A[prev, k]:
                    raise InvalidTrajectoryInBatch(
                        ped, [(pos, f"move {graph.nodes[prev].id}->{graph.nodes[k].id} is not a link")]
                    )
                s = int(math.floor(rec.t / slice_seconds))
                if s not in slices:
                    slices[s] = np.zeros((graph.n, graph.n), dtype=np.int64)
                slices[s][prev, k] += 1
            prev = k
    return dict(sorted(slices.items()))


def static_trajectories_from_ntxy(
    records: Iterable[NtxyRecord],
    graph: WalkwayGraph,
    infill: bool = False,
) -> list[StaticTrajectory]:
    """NXY reduction followed by map matching, one trajectory per pedestrian."""
    reduced = reduce_ntxy(records)
    return [
        StaticTrajectory(ped, tuple(map_match(poly, graph, infill=infill)))
        for ped, poly in reduced.items()
    ]
