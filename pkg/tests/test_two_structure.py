import networkx as nx
import numpy as np
import pytest

from errors import StructureError
from two_structure import (NO_COLOR, ColorInvolution, Graph, TwoStructure, as_graph, canonical_order,
                           complement, induced, vertex_set)


def test_diagonal_is_uncolored_and_matrix_read_only():
    ts = TwoStructure(np.array([[5, 1], [1, 5]]), 2)
    assert ts.colors[0, 0] == NO_COLOR
    with pytest.raises(ValueError):
        ts.colors[0, 1] = 0


@pytest.mark.parametrize("matrix, num_colors", [
    (np.array([[0, 1], [0, 0]]), 2),
    (np.array([[0, 3], [3, 0]]), 2),
    (np.zeros((2, 3)), 2),
])
def test_invalid_matrices_are_rejected(matrix, num_colors):
    with pytest.raises(StructureError):
        TwoStructure(matrix, num_colors)


def test_color_of_self_pair_raises(p4):
    with pytest.raises(StructureError):
        p4.color(1, 1)


def test_from_pairs_fills_default():
    ts = TwoStructure.from_pairs(3, 3, {(0, 2): 2}, default=1)
    assert ts.color(2, 0) == 2
    assert ts.color(0, 1) == 1
    assert ts.used_colors() == [1, 2]


def test_graph_views(p4):
    assert p4.edges() == [(0, 1), (1, 2), (2, 3)]
    assert p4.edge_count() == 3
    assert p4.neighbors(1) == frozenset({0, 2})
    assert p4.has_edge(2, 3) and not p4.has_edge(0, 3)
    assert nx.is_isomorphic(p4.to_networkx(), nx.path_graph(4))


def test_graph_rejects_loops():
    with pytest.raises(StructureError):
        Graph.from_edges(2, [(1, 1)])


def test_complement_and_as_graph(p4):
    co = complement(p4)
    assert co.edges() == [(0, 2), (0, 3), (1, 3)]
    assert complement(co) == p4
    assert isinstance(as_graph(TwoStructure(p4.colors, 2)), Graph)
    with pytest.raises(StructureError):
        as_graph(TwoStructure(np.zeros((2, 2)), 3))


def test_induced_relabels_in_increasing_order(p4):
    sub, order = induced(p4, [3, 1, 2])
    assert order == (1, 2, 3)
    assert isinstance(sub, Graph)
    assert sub.edges() == [(0, 1), (1, 2)]
    with pytest.raises(StructureError):
        induced(p4, [])


def test_involution_validation():
    assert ColorInvolution.for_graphs()(0) == 1
    inv = ColorInvolution.from_pairs(4, [(0, 3), (1, 2)])
    assert inv.mapping == (3, 2, 1, 0)
    for bad in [(0,), (0, 1), (1, 2, 0)]:
        with pytest.raises(StructureError):
            ColorInvolution(bad)
    with pytest.raises(StructureError):
        ColorInvolution.from_pairs(4, [(0, 1)])


def test_involution_must_cover_structure():
    ts = TwoStructure(np.zeros((3, 3)), 4)
    with pytest.raises(StructureError):
        ColorInvolution.for_graphs().check_covers(ts)


def test_vertex_set_and_canonical_order():
    assert vertex_set([2, 0, 2], 3) == frozenset({0, 2})
    with pytest.raises(StructureError):
        vertex_set([3], 3)
    family = [frozenset({2, 3}), frozenset({0}), frozenset({1, 2}), frozenset({0, 1, 2})]
    assert canonical_order(family) == [frozenset({0}), frozenset({1, 2}), frozenset({2, 3}), frozenset({0, 1, 2})]
