"""Static trajectories: parsing, validation, walking distance and map matching.

A static trajectory is one respondent's route as an ordered node sequence,
written one per line as ``respondent_id,A-B-D-F``.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .apsp import ShortestPathResult, floyd_warshall, reconstruct_path
from .errors import (
    InvalidTrajectory,
    NonAdjacentSnap,
    NonMonotonicTimestamps,
    UnreachableInfill,
    ZeroDenominator,
)
from .netmodel import WalkwayGraph


@dataclass(frozen=True)
class StaticTrajectory:
    respondent_id: str
    nodes: tuple[str, ...]

    @property
    def n_links(self) -> int:
        return max(len(self.nodes) - 1, 0)

    def pairs(self) -> list[tuple[str, str]]:
        return list(zip(self.nodes[:-1], self.nodes[1:]))

    def to_line(self) -> str:
        return f"{self.respondent_id},{'-'.join(self.nodes)}"


@dataclass(frozen=True)
class ParseError:
    line: int
    text: str
    message: str


class Reason(str, enum.Enum):
    UNKNOWN_NODE = "UnknownNode"
    TOO_SHORT = "TooShort"
    NON_ADJACENT = "NonAdjacent"
    WRONG_WAY = "WrongWay"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TrajectoryValidation:
    reasons: tuple[tuple[int, Reason], ...] = field(default=())

    @property
    def status(self) -> str:
        return "invalid" if self.reasons else "valid"

    @property
    def valid(self) -> bool:
        return not self.reasons


@dataclass(frozen=True)
class NtxyRecord:
    n: str
    t: float
    x: float
    y: float


def parse_trajectories(text: str) -> tuple[list[StaticTrajectory], list[ParseError]]:
    """Parse trajectory lines. Blank and ``#`` lines are skipped.

    Malformed lines are collected rather than raised so one bad row does not
    sink a survey batch.
    """
    trajectories: list[StaticTrajectory] = []
    errors: list[ParseError] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rid, sep, seq = line.partition(",")
        rid, seq = rid.strip(), seq.strip()
        if not sep or not rid:
            errors.append(ParseError(lineno, raw, "expected 'respondent_id,node-node-...'"))
            continue
        if "," in seq:
            errors.append(ParseError(lineno, raw, "more than one comma"))
            continue
        nodes = tuple(tok.strip() for tok in seq.split("-"))
        if not seq or any(not tok for tok in nodes):
            errors.append(ParseError(lineno, raw, "empty node id in sequence"))
            continue
        trajectories.append(StaticTrajectory(rid, nodes))
    return trajectories, errors


def format_trajectories(trajectories: Iterable[StaticTrajectory]) -> str:
    return "".join(t.to_line() + "\n" for t in trajectories)


def validate_trajectory(traj: StaticTrajectory, graph: WalkwayGraph) -> TrajectoryValidation:
    """Check node ids, length and link direction, in that order.

    Checking stops at the first failing stage.  Positions refer to the node
    index in the sequence; for link problems, the second node of the pair.
    """
    unknown = [(p, Reason.UNKNOWN_NODE) for p, v in enumerate(traj.nodes) if v not in graph.index]
    if unknown:
        return TrajectoryValidation(tuple(unknown))
    if len(traj.nodes) < 2:
        return TrajectoryValidation(((0, Reason.TOO_SHORT),))
    reasons = []
    for p, (a, b) in enumerate(traj.pairs(), start=1):
        if graph.has_link(a, b):
            continue
        reasons.append((p, Reason.WRONG_WAY if graph.has_link(b, a) else Reason.NON_ADJACENT))
    return TrajectoryValidation(tuple(reasons))


def _require_valid(traj: StaticTrajectory, graph: WalkwayGraph) -> None:
    check = validate_trajectory(traj, graph)
    if not check.valid:
        detail = "; ".join(f"{r} at position {p}" for p, r in check.reasons)
        raise InvalidTrajectory(f"respondent {traj.respondent_id!r}: {detail}")


def walking_distance(traj: StaticTrajectory, graph: WalkwayGraph) -> float:
    """Summed link lengths along the route; repeated links count each time."""
    _require_valid(traj, graph)
    idx = [graph.index[v] for v in traj.nodes]
    return float(graph.D[idx[:-1], idx[1:]].sum())


def walking_distances(trajectories: Sequence[StaticTrajectory], graph: WalkwayGraph) -> np.ndarray:
    return np.array([walking_distance(t, graph) for t in trajectories], dtype=float)


def reduce_ntxy(records: Iterable[NtxyRecord]) -> dict[str, list[tuple[float, float]]]:
    """Drop timestamps, keeping each pedestrian's points in time order.

    Input order does not matter.  Consecutive repeats of a position (standing
    still) collapse to one point.  Two records of one pedestrian at the same
    time but different positions have no defined order and are rejected.
    """
    by_ped: dict[str, list[tuple[float, float, float]]] = defaultdict(list)
    for rec in records:
        by_ped[rec.n].append((rec.t, rec.x, rec.y))

    out: dict[str, list[tuple[float, float]]] = {}
    for ped in sorted(by_ped):
        pts = sorted(by_ped[ped])
        for (t0, x0, y0), (t1, x1, y1) in zip(pts, pts[1:]):
            if t0 == t1 and (x0, y0) != (x1, y1):
                raise NonMonotonicTimestamps(
                    f"pedestrian {ped!r} has two positions at t={t0}: ({x0}, {y0}) and ({x1}, {y1})"
                )
        poly: list[tuple[float, float]] = []
        for _, x, y in pts:
            if not poly or poly[-1] != (x, y):
                poly.append((x, y))
        out[ped] = poly
    return out


def snap_points(polyline, graph: WalkwayGraph) -> list[int]:
    """Nearest node index for every point (lowest index on ties)."""
    pts = np.asarray(polyline, dtype=float).reshape(-1, 2)
    d2 = ((pts[:, None, :] - graph.coords[None, :, :]) ** 2).sum(axis=2)
    # argmin returns the first minimum, i.e. the lowest index
    return d2.argmin(axis=1).tolist()


def map_match(
    polyline,
    graph: WalkwayGraph,
    infill: bool = True,
    paths: ShortestPathResult | None = None,
) -> list[str]:
    """Snap a drawn or recorded polyline onto the walkway graph.

    With ``infill``, gaps between consecutive snapped nodes that are not
    directly linked are bridged by a shortest path.
    """
    pts = np.asarray(polyline, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("polyline is empty")
    snapped: list[int] = []
    for k in snap_points(pts, graph):
        if not snapped or snapped[-1] != k:
            snapped.append(k)

    seq = [snapped[0]]
    for a, b in zip(snapped, snapped[1:]):
        if graph.A[a, b]:
            seq.append(b)
            continue
        if not infill:
            raise NonAdjacentSnap(
                f"snapped nodes {graph.nodes[a].id!r} and {graph.nodes[b].id!r} are not linked"
            )
        if paths is None:
            paths = floyd_warshall(graph)
        bridge = reconstruct_path(paths, a, b)
        if not bridge:
            raise UnreachableInfill(
                f"no path from {graph.nodes[a].id!r} to {graph.nodes[b].id!r}"
            )
        seq.extend(bridge[1:])
    return [graph.nodes[k].id for k in seq]


def lambda_index(median_walk: float, median_apsp: float) -> float:
    """Median walking distance over median all-pairs shortest distance."""
    if median_apsp == 0:
        raise ZeroDenominator("median shortest-path distance is zero")
    return median_walk / median_apsp
