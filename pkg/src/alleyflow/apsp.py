"""All-pairs shortest paths over a walkway graph."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyGraph, UnreachablePairs
from .netmodel import WalkwayGraph
from .stats import DescriptiveStats, describe

NO_PRED = -1


@dataclass(frozen=True, eq=False)
class ShortestPathResult:
    S: np.ndarray
    pred: np.ndarray
    ids: tuple[str, ...]

    def index(self, node) -> int:
        if isinstance(node, (int, np.integer)):
            return int(node)
        return self.ids.index(node)


def floyd_warshall(graph: WalkwayGraph | np.ndarray) -> ShortestPathResult:
    """Dense Floyd-Warshall with predecessor tracking.

    Accepts a graph or a bare distance matrix (``inf`` = no link).  ``pred[i, j]``
    is the node preceding ``j`` on the chosen ``i -> j`` path.  Updates need a
    strict improvement, so among equal-length routes the one through the lowest
    intermediate index (found first) is kept.

    Each k-phase is applied to the whole matrix at once.  Row k and column k
    cannot change during phase k when lengths are non-negative, so this is
    bit-identical to the scalar triple loop.
    """
    if isinstance(graph, WalkwayGraph):
        D, ids = graph.D, tuple(graph.ids)
    else:
        D = np.asarray(graph, dtype=float)
        ids = tuple(str(i) for i in range(D.shape[0]))
    n = D.shape[0]
    if n == 0:
        raise EmptyGraph("graph has no nodes")

    S = np.array(D, dtype=float, copy=True)
    np.fill_diagonal(S, 0.0)
    pred = np.full((n, n), NO_PRED, dtype=np.int64)
    linked = np.isfinite(S)
    np.fill_diagonal(linked, False)
    pred[linked] = np.nonzero(linked)[0]

    for k in range(n):
        via = S[:, k, None] + S[None, k, :]
        better = via < S
        if better.any():
            S = np.where(better, via, S)
            pred = np.where(better, pred[k][None, :], pred)

    S.setflags(write=False)
    pred.setflags(write=False)
    return ShortestPathResult(S=S, pred=pred, ids=ids)


def reconstruct_path(result: ShortestPathResult, i, j) -> list[int]:
    """Node indices of the stored optimal path from ``i`` to ``j``.

    Returns an empty list when ``j`` is unreachable from ``i``.
    """
    i, j = result.index(i), result.index(j)
    if i == j:
        return [i]
    if not np.isfinite(result.S[i, j]):
        return []
    path = [j]
    cur = j
    for _ in range(len(result.ids)):
        cur = int(result.pred[i, cur])
        path.append(cur)
        if cur == i:
            return path[::-1]
    raise RuntimeError(f"predecessor chain from {i} to {j} does not terminate")


def reconstruct_ids(result: ShortestPathResult, i, j) -> list[str]:
    return [result.ids[k] for k in reconstruct_path(result, i, j)]


def unreachable_pairs(result: ShortestPathResult) -> list[tuple[str, str]]:
    rows, cols = np.nonzero(~np.isfinite(result.S))
    return [(result.ids[a], result.ids[b]) for a, b in zip(rows, cols)]


def pair_distances(result: ShortestPathResult) -> np.ndarray:
    """Ordered-pair shortest distances ``S[i, j] > 0``, ``i != j``, row-major.

    Raises :class:`UnreachablePairs` if any pair is disconnected.
    """
    bad = unreachable_pairs(result)
    if bad:
        raise UnreachablePairs(bad)
    S = result.S
    off = ~np.eye(S.shape[0], dtype=bool)
    vals = S[off]
    return vals[vals > 0]


def apsp_distance_stats(result: ShortestPathResult, bin_width: float = 1.0) -> DescriptiveStats:
    return describe(pair_distances(result), bin_width)
