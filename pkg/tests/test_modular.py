import pytest
from hypothesis import given, settings

from errors import CapExceededError, NotCographError, StructureError
from modular import (COMPLETE, LEAF, PRIME, binary_cotree, enumerate_modules_from_tree, graph_from_cotree,
                     is_cograph, is_module, modular_decomposition, projected_module_count)
from oracles import BruteForceOracle
from two_structure import Graph, TwoStructure

from strategies import graphs, two_structures


def test_is_module_basics(p4):
    assert is_module(p4, [])
    assert is_module(p4, [2])
    assert is_module(p4, range(4))
    assert not is_module(p4, [0, 1])
    with pytest.raises(StructureError):
        is_module(p4, [7])


def test_p4_is_a_single_prime_node(p4):
    tree = modular_decomposition(p4)
    assert tree.root.kind == PRIME
    assert [child.vertex for child in tree.root.children] == [0, 1, 2, 3]
    assert tree.label(tree.root) == PRIME
    assert not is_cograph(p4)


def test_complete_graph_is_one_series_node(complete5):
    tree = modular_decomposition(complete5)
    assert tree.root.kind == COMPLETE
    assert tree.root.color == 1
    assert tree.label(tree.root) == 'series'
    assert all(child.kind == LEAF for child in tree.root.children)
    assert projected_module_count(tree) == 6 + 2 ** 5 - 5 - 2


def test_c4_is_parallel_over_series(c4):
    tree = modular_decomposition(c4)
    assert tree.label(tree.root) == 'series'
    assert sorted(sorted(child.leaves) for child in tree.root.children) == [[0, 2], [1, 3]]
    assert {tree.label(child) for child in tree.root.children} == {'parallel'}


def test_single_vertex_tree():
    tree = modular_decomposition(Graph.from_edges(1, []))
    assert tree.root.is_leaf and tree.root.vertex == 0
    assert enumerate_modules_from_tree(tree, 10) == [frozenset({0})]


def test_enumeration_respects_cap(complete5):
    tree = modular_decomposition(complete5)
    with pytest.raises(CapExceededError):
        enumerate_modules_from_tree(tree, 10)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_graph_tree_lists_every_module(g):
    tree = modular_decomposition(g)
    assert enumerate_modules_from_tree(tree, 1 << 12) == BruteForceOracle().brute_modules(g)


@settings(max_examples=80, deadline=None)
@given(two_structures(max_n=7))
def test_two_structure_tree_lists_every_module(ts):
    tree = modular_decomposition(ts)
    assert enumerate_modules_from_tree(tree, 1 << 12) == BruteForceOracle().brute_modules(ts)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_children_partition_their_parent(g):
    for node in modular_decomposition(g).internal_nodes():
        assert len(node.children) >= 2
        assert frozenset().union(*(child.leaves for child in node.children)) == node.leaves
        assert sum(len(child.leaves) for child in node.children) == len(node.leaves)
        assert all(is_module(g, child.leaves) for child in node.children)


def test_three_color_complete_node():
    ts = TwoStructure.from_pairs(3, 3, {(0, 1): 2, (0, 2): 2, (1, 2): 2})
    tree = modular_decomposition(ts)
    assert tree.root.kind == COMPLETE and tree.root.color == 2
    assert not tree.is_graph


def test_binary_cotree_round_trips(c4):
    root = binary_cotree(c4)
    assert root.leaves == frozenset(range(4))
    assert graph_from_cotree(root, 4) == c4


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=10))
def test_cotree_rebuilds_any_cograph(g):
    if is_cograph(g):
        root = binary_cotree(g)
        assert graph_from_cotree(root, g.n) == g
    else:
        with pytest.raises(NotCographError):
            binary_cotree(g)
