import math

import numpy as np
import pytest

from alleyflow import io as aio
from alleyflow.errors import DuplicateLink, DuplicateNodeId, EmptyGraph, SelfLoop, UnknownEndpoint
from alleyflow.netmodel import (
    Link,
    Node,
    build_graph,
    distance_matrix_export,
    parse_matrix_table,
)

from conftest import random_graphs


def test_three_four_five():
    g = build_graph([Node("a", 0, 0), Node("b", 3, 4)], [Link("a", "b")])
    assert g.D.tolist() == [[0.0, 5.0], [5.0, 0.0]]
    assert g.A.tolist() == [[0, 1], [1, 0]]


def test_one_way_asymmetry():
    g = build_graph([Node("a", 0, 0), Node("b", 0, 2), Node("c", 9, 9)], [Link("a", "b", one_way=True)])
    assert g.D[0, 1] == 2.0
    assert math.isinf(g.D[1, 0])
    assert math.isinf(g.D[0, 2]) and math.isinf(g.D[2, 0]) and math.isinf(g.D[1, 2])
    assert np.diag(g.D).tolist() == [0.0, 0.0, 0.0]


def test_node_order_is_input_order():
    g = build_graph([Node("Z", 0, 0), Node("A", 1, 0)], [Link("A", "Z")])
    assert g.ids == ["Z", "A"]


@pytest.mark.parametrize(
    "nodes, links, exc, needle",
    [
        ([Node("a", 0, 0), Node("a", 1, 1)], [], DuplicateNodeId, "'a'"),
        ([Node("a", 0, 0)], [Link("a", "q")], UnknownEndpoint, "'q'"),
        ([Node("a", 0, 0)], [Link("a", "a")], SelfLoop, "'a'"),
        ([Node("a", 0, 0), Node("b", 1, 0)], [Link("a", "b"), Link("b", "a", True)], DuplicateLink, "link 1"),
        ([], [], EmptyGraph, "no nodes"),
    ],
)
def test_build_errors_name_the_record(nodes, links, exc, needle):
    with pytest.raises(exc, match=needle):
        build_graph(nodes, links)


def test_nonfinite_coordinate_rejected():
    with pytest.raises(ValueError):
        build_graph([Node("a", float("nan"), 0)], [])


def test_export_small_cases():
    g = build_graph([Node("a", 0, 0), Node("b", 3, 4)], [Link("a", "b")])
    assert distance_matrix_export(g) == [["id", "a", "b"], ["a", "0", "5"], ["b", "5", "0"]]

    g = build_graph([Node("a", 0, 0), Node("b", 0, 2), Node("c", 9, 9)], [Link("a", "b", one_way=True)])
    table = distance_matrix_export(g)
    cells = [v for r, row in enumerate(table[1:]) for c, v in enumerate(row[1:]) if r != c]
    assert sum(v != "inf" for v in cells) == 1


def test_export_roundtrip_bit_exact():
    for g in random_graphs(20, 10, seed=11):
        labels, D = aio.read_matrix_csv(aio.matrix_csv_text(g.D, g.ids, "# header"))
        assert labels == g.ids
        assert np.array_equal(D, g.D)
        assert D.tobytes() == np.ascontiguousarray(g.D).tobytes()


def test_venue_files_roundtrip(tmp_path):
    for k, g in enumerate(random_graphs(10, 12, seed=5)):
        n, l = tmp_path / f"n{k}.csv", tmp_path / f"l{k}.csv"
        n.write_text(aio.nodes_csv_text(g.nodes, "# x"))
        l.write_text(aio.links_csv_text(g.links))
        back = aio.load_venue(n, l)
        assert np.array_equal(back.A, g.A)
        assert np.array_equal(back.D, g.D)


def test_sparsity_and_symmetry():
    for g in random_graphs(30, 15, seed=2, one_way=0.3):
        finite_off = np.isfinite(g.D) & ~np.eye(g.n, dtype=bool)
        assert finite_off.sum() == g.A.sum()
        assert np.array_equal(finite_off, g.A.astype(bool))
        for link in g.links:
            i, j = g.index[link.source], g.index[link.target]
            if not link.one_way:
                assert g.D[i, j] == g.D[j, i]
                assert g.A[i, j] == g.A[j, i] == 1


def test_parse_matrix_rejects_mislabelled_rows():
    with pytest.raises(ValueError):
        parse_matrix_table([["id", "a", "b"], ["b", "0", "1"], ["a", "1", "0"]])
