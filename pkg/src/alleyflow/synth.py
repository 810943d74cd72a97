"""Synthetic venues, walkers and independent shortest-path oracles.

Used to build fixtures and to cross-check the analysis code; none of the
walkers try to be realistic shoppers.  All randomness goes through
``numpy.random.Generator`` seeded explicitly, which produces the same stream on
every platform.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .apsp import floyd_warshall, reconstruct_path
from .errors import DegenerateGrid, DisconnectedGraph, TooLargeForExhaustive
from .netmodel import Link, Node, WalkwayGraph, build_graph
from .trajectory import NtxyRecord, StaticTrajectory

EXHAUSTIVE_LIMIT = 7


def grid_id(r: int, c: int) -> str:
    return f"R{r}C{c}"


def make_grid_venue(rows: int, cols: int, spacing: float = 10.0) -> tuple[list[Node], list[Link]]:
    """Lattice of ``rows x cols`` nodes with two-way links between neighbours."""
    if rows < 2 or cols < 2:
        raise DegenerateGrid(f"grid needs at least 2x2 nodes, got {rows}x{cols}")
    if not spacing > 0:
        raise DegenerateGrid(f"spacing must be positive, got {spacing}")
    nodes = [Node(grid_id(r, c), c * spacing, r * spacing) for r in range(rows) for c in range(cols)]
    links = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                links.append(Link(grid_id(r, c), grid_id(r, c + 1)))
            if r + 1 < rows:
                links.append(Link(grid_id(r, c), grid_id(r + 1, c)))
    return nodes, links


def make_ladder_venue(rungs: int, spacing: float = 5.0, width: float = 8.0):
    """Two parallel aisles joined by cross-alleys; ``2 * rungs`` nodes.

    Nodes alternate left/right along the ladder so every link joins indices
    at most 2 apart, like a hand-coded venue where neighbours get nearby
    labels.
    """
    nodes, links = [], []
    for k in range(rungs):
        nodes.append(Node(f"L{k}", 0.0, k * spacing))
        nodes.append(Node(f"R{k}", width, k * spacing))
        links.append(Link(f"L{k}", f"R{k}"))
        if k:
            links.append(Link(f"L{k - 1}", f"L{k}"))
            links.append(Link(f"R{k - 1}", f"R{k}"))
    return nodes, links


def make_hypermarket_venue(
    rungs: int = 44, cross: int = 9, cashiers: int = 4, spacing: float = 5.0, width: float = 8.0,
):
    """Ladder venue with ``cross`` diagonal short-cuts and one-way cashier rungs.

    The defaults give 88 nodes and 139 links, the size of a mid-sized
    hypermarket floor.  The first ``cashiers`` rungs are one-way (aisle L to
    aisle R).
    """
    if cross > rungs - 1 or cashiers > rungs:
        raise DegenerateGrid("too many cross-alleys or cashier lanes for the ladder")
    nodes, links = make_ladder_venue(rungs, spacing, width)
    links = [
        Link(l.source, l.target, one_way=True)
        if l.source.startswith("L") and l.target.startswith("R") and int(l.source[1:]) < cashiers
        else l
        for l in links
    ]
    step = max((rungs - 1) // max(cross, 1), 1)
    for c in range(cross):
        k = c * step
        links.append(Link(f"L{k}", f"R{k + 1}"))
    return nodes, links


def random_venue(
    n: int,
    rng: np.random.Generator,
    extra: float = 0.3,
    one_way: float = 0.0,
    extent: float = 100.0,
) -> tuple[list[Node], list[Link]]:
    """Random connected venue: a two-way spanning tree plus extra links.

    ``extra`` is the probability of each remaining pair getting a link and
    ``one_way`` the chance that such an extra link is one-way.
    """
    xy = rng.uniform(0.0, extent, size=(n, 2))
    nodes = [Node(f"N{i}", float(x), float(y)) for i, (x, y) in enumerate(xy)]
    order = rng.permutation(n)
    have = set()
    links = []
    for pos in range(1, n):
        a = int(order[pos])
        b = int(order[rng.integers(pos)])
        have.add((min(a, b), max(a, b)))
        links.append(Link(f"N{a}", f"N{b}"))
    for a in range(n):
        for b in range(a + 1, n):
            if (a, b) in have or rng.random() >= extra:
                continue
            if rng.random() < one_way:
                s, t = (a, b) if rng.random() < 0.5 else (b, a)
                links.append(Link(f"N{s}", f"N{t}", one_way=True))
            else:
                links.append(Link(f"N{a}", f"N{b}"))
    return nodes, links


# --- oracles ---------------------------------------------------------------


def dijkstra_apsp(D: np.ndarray) -> np.ndarray:
    """Per-source Dijkstra over the adjacency lists of ``D``."""
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    adj = [[(j, D[i, j]) for j in range(n) if j != i and math.isfinite(D[i, j])] for i in range(n)]
    out = np.full((n, n), np.inf)
    for src in range(n):
        dist = out[src]
        dist[src] = 0.0
        heap = [(0.0, src)]
        done = [False] * n
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v, w in adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    return out


def exhaustive_apsp(D: np.ndarray) -> np.ndarray:
    """Minimum over every simple path; only feasible for tiny graphs."""
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    if n > EXHAUSTIVE_LIMIT:
        raise TooLargeForExhaustive(f"{n} nodes exceeds the exhaustive limit of {EXHAUSTIVE_LIMIT}")
    out = np.full((n, n), np.inf)
    np.fill_diagonal(out, 0.0)

    def extend(src, u, length, visited):
        for v in range(n):
            if v in visited or not math.isfinite(D[u, v]):
                continue
            total = length + D[u, v]
            if total < out[src, v]:
                out[src, v] = total
            visited.add(v)
            extend(src, v, total, visited)
            visited.discard(v)

    for src in range(n):
        extend(src, src, 0.0, {src})
    return out


def brute_force_apsp(graph: WalkwayGraph | np.ndarray, mode: Literal["exhaustive", "dijkstra"] = "dijkstra") -> np.ndarray:
    D = graph.D if isinstance(graph, WalkwayGraph) else np.asarray(graph, dtype=float)
    if mode == "exhaustive":
        return exhaustive_apsp(D)
    if mode == "dijkstra":
        return dijkstra_apsp(D)
    raise ValueError(f"unknown mode {mode!r}")


# --- walkers ---------------------------------------------------------------


@dataclass(frozen=True)
class WalkerPolicy:
    kind: Literal["shortest_path", "random_walk", "shopping_list"] = "shortest_path"
    waypoints: int = 3
    steps: int = 20
    no_backtrack: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("shortest_path", "random_walk", "shopping_list"):
            raise ValueError(f"unknown walker kind {self.kind!r}")
        if self.steps < 1 or self.waypoints < 1:
            raise ValueError("steps and waypoints must be >= 1")


def _sample_pair(rng, n):
    o = int(rng.integers(n))
    d = int(rng.integers(n - 1))
    return o, d + (d >= o)


def _chain(paths, stops):
    seq = [stops[0]]
    for a, b in zip(stops, stops[1:]):
        seq.extend(reconstruct_path(paths, a, b)[1:])
    return seq


def generate_walkers(graph: WalkwayGraph, policy: WalkerPolicy, count: int, prefix: str = "w"):
    """Generate ``count`` valid trajectories under ``policy``.

    ``shortest_path`` walkers go between a uniformly drawn origin/destination
    pair (``o != d``); ``shopping_list`` walkers chain shortest paths through
    ``waypoints`` intermediate stops; ``random_walk`` walkers take ``steps``
    uniform steps along outgoing links.
    """
    if graph.n < 2:
        raise DisconnectedGraph("need at least two nodes")
    paths = floyd_warshall(graph)
    if not np.isfinite(paths.S).all():
        raise DisconnectedGraph("some node pairs are unreachable")
    rng = np.random.default_rng(policy.seed)
    width = len(str(max(count - 1, 0)))
    out = []
    for w in range(count):
        if policy.kind == "shortest_path":
            seq = reconstruct_path(paths, *_sample_pair(rng, graph.n))
        elif policy.kind == "shopping_list":
            stops = [int(rng.integers(graph.n))]
            while len(stops) < policy.waypoints + 2:
                nxt = int(rng.integers(graph.n))
                if nxt != stops[-1]:
                    stops.append(nxt)
            seq = _chain(paths, stops)
        else:
            seq = [int(rng.integers(graph.n))]
            for _ in range(policy.steps):
                options = graph.neighbors(seq[-1])
                if policy.no_backtrack and len(seq) > 1 and len(options) > 1:
                    options = options[options != seq[-2]]
                seq.append(int(options[rng.integers(len(options))]))
        out.append(StaticTrajectory(f"{prefix}{w:0{width}d}", tuple(graph.nodes[k].id for k in seq)))
    return out


def ntxy_from_trajectories(
    trajectories,
    graph: WalkwayGraph,
    rng: np.random.Generator,
    speed: float = 1.2,
    max_start: float = 3600.0,
    dwell: float = 0.3,
) -> list[NtxyRecord]:
    """Timestamped positions for walkers moving at ``speed`` m/s between nodes.

    Each walker starts at a random time; with probability ``dwell`` a node is
    recorded twice (standing still), which the NXY reduction must collapse.
    Records are returned shuffled.
    """
    recs = []
    for traj in trajectories:
        t = float(rng.uniform(0.0, max_start))
        prev = None
        for node_id in traj.nodes:
            node = graph.nodes[graph.index[node_id]]
            if prev is not None:
                t += math.hypot(node.x - prev.x, node.y - prev.y) / speed
            recs.append(NtxyRecord(traj.respondent_id, t, node.x, node.y))
            if rng.random() < dwell:
                t += float(rng.uniform(1.0, 30.0))
                recs.append(NtxyRecord(traj.respondent_id, t, node.x, node.y))
            prev = node
    order = rng.permutation(len(recs))
    return [recs[k] for k in order]


def build(nodes_links) -> WalkwayGraph:
    """``build_graph`` on a ``(nodes, links)`` pair."""
    return build_graph(*nodes_links)
