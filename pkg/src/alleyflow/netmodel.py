"""Walkway graph: nodes placed mid-alley, links for alleys.

Matrix rows and columns follow the order in which nodes are supplied.  The
distance matrix uses ``inf`` for unconnected ordered pairs and 0 on the
diagonal; the adjacency matrix is its 0/1 shadow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DuplicateLink, DuplicateNodeId, EmptyGraph, SelfLoop, UnknownEndpoint


@dataclass(frozen=True)
class Node:
    id: str
    x: float
    y: float


@dataclass(frozen=True)
class Link:
    source: str
    target: str
    one_way: bool = False


@dataclass(frozen=True, eq=False)
class WalkwayGraph:
    nodes: tuple[Node, ...]
    links: tuple[Link, ...]
    A: np.ndarray
    D: np.ndarray
    index: dict[str, int] = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def ids(self) -> list[str]:
        return [node.id for node in self.nodes]

    @property
    def coords(self) -> np.ndarray:
        return np.array([(node.x, node.y) for node in self.nodes], dtype=float)

    def directed_pairs(self) -> list[tuple[int, int]]:
        """Directed links as index pairs, row-major order."""
        rows, cols = np.nonzero(self.A)
        return list(zip(rows.tolist(), cols.tolist()))

    def alleys(self) -> list[tuple[int, int]]:
        """Unordered alleys as ``(i, j)`` with ``i < j``, sorted."""
        seen = set()
        for i, j in self.directed_pairs():
            seen.add((min(i, j), max(i, j)))
        return sorted(seen)

    def has_link(self, a: str, b: str) -> bool:
        return bool(self.A[self.index[a], self.index[b]])

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.A[i])


def _check_coordinate(node: Node) -> None:
    if not (math.isfinite(node.x) and math.isfinite(node.y)):
        raise ValueError(f"node {node.id!r} has non-finite coordinates ({node.x}, {node.y})")


def build_graph(nodes: Sequence[Node], links: Iterable[Link]) -> WalkwayGraph:
    """Build the adjacency and Euclidean distance matrices.

    Two-way links fill both directed cells.  A two-way link that overlaps a
    directed cell already taken by another link is a :class:`DuplicateLink`.
    """
    nodes = tuple(nodes)
    if not nodes:
        raise EmptyGraph("graph has no nodes")
    index: dict[str, int] = {}
    for pos, node in enumerate(nodes):
        if not node.id:
            raise ValueError(f"node at position {pos} has an empty id")
        if node.id in index:
            raise DuplicateNodeId(f"duplicate node id {node.id!r} at position {pos}")
        _check_coordinate(node)
        index[node.id] = pos

    n = len(nodes)
    A = np.zeros((n, n), dtype=np.int8)
    D = np.full((n, n), np.inf)
    np.fill_diagonal(D, 0.0)

    links = tuple(links)
    for pos, link in enumerate(links):
        for end in (link.source, link.target):
            if end not in index:
                raise UnknownEndpoint(
                    f"link {pos} ({link.source}->{link.target}) references unknown node {end!r}"
                )
        if link.source == link.target:
            raise SelfLoop(f"link {pos} is a self-loop on {link.source!r}")
        i, j = index[link.source], index[link.target]
        length = math.hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y)
        cells = [(i, j)] if link.one_way else [(i, j), (j, i)]
        for a, b in cells:
            if A[a, b]:
                raise DuplicateLink(
                    f"link {pos} ({link.source}->{link.target}) duplicates directed pair "
                    f"{nodes[a].id}->{nodes[b].id}"
                )
            A[a, b] = 1
            D[a, b] = length

    A.setflags(write=False)
    D.setflags(write=False)
    return WalkwayGraph(nodes=nodes, links=links, A=A, D=D, index=index)


def format_value(value: float) -> str:
    """Text form used in matrix exports; ``repr`` round-trips doubles."""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def matrix_table(matrix: np.ndarray, labels: Sequence[str]) -> list[list[str]]:
    """Rows of a labelled matrix table; first row is the header."""
    matrix = np.asarray(matrix)
    if matrix.shape != (len(labels), len(labels)):
        raise ValueError(f"matrix shape {matrix.shape} does not match {len(labels)} labels")
    table = [["id", *labels]]
    for label, row in zip(labels, matrix):
        table.append([label, *(format_value(v) for v in row)])
    return table


def distance_matrix_export(graph: WalkwayGraph) -> list[list[str]]:
    return matrix_table(graph.D, graph.ids)


def parse_matrix_table(table: Sequence[Sequence[str]]) -> tuple[list[str], np.ndarray]:
    """Inverse of :func:`matrix_table`."""
    header, *rows = table
    labels = list(header[1:])
    if len(rows) != len(labels):
        raise ValueError(f"expected {len(labels)} matrix rows, found {len(rows)}")
    out = np.empty((len(labels), len(labels)))
    for r, row in enumerate(rows):
        if row[0] != labels[r]:
            raise ValueError(f"row {r} label {row[0]!r} does not match column {labels[r]!r}")
        if len(row) != len(labels) + 1:
            raise ValueError(f"row {row[0]!r} has {len(row) - 1} values, expected {len(labels)}")
        out[r] = [float(v) for v in row[1:]]
    return labels, out
