from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import CapExceededError, StructureError
from involution_modules import (PATTERN_FOREIGN, PATTERN_MIXED, default_involution, enumerate_involution_modules_from_tree,
                                find_forbidden_pattern, imd_tree, is_involution_module, pivot_shape)
from modular import COMPLETE, LEAF, PRIME, is_module
from oracles import BruteForceOracle
from switch_ops import switch_at_pivot
from two_structure import ColorInvolution, Graph, TwoStructure, complement

from strategies import FOUR_COLORS, graphs, two_structures

GRAPHS = ColorInvolution.for_graphs()


def test_antitwin_ends_of_p4_form_an_involution_module(p4):
    assert is_involution_module(p4, GRAPHS, [0, 3])
    assert not is_involution_module(p4, GRAPHS, [0, 1])
    assert find_forbidden_pattern(p4, GRAPHS, [0, 3]) is None


def test_mixed_pattern_witness(p4):
    witness = find_forbidden_pattern(p4, GRAPHS, [0, 1])
    assert witness.kind == PATTERN_MIXED
    assert (witness.u, witness.v, witness.a, witness.b) == (1, 0, 3, 2)
    assert witness.colors == (0, 0, 0, 1)


def test_foreign_pattern_witness(four_colors):
    ts = TwoStructure.from_pairs(3, 4, {(0, 2): 0, (1, 2): 2, (0, 1): 1})
    witness = find_forbidden_pattern(ts, four_colors, [0, 1])
    assert witness.kind == PATTERN_FOREIGN
    assert (witness.u, witness.v, witness.a) == (1, 0, 2)
    assert not is_involution_module(ts, four_colors, [0, 1])


def test_default_involution():
    ts = TwoStructure.from_pairs(3, 3, {})
    with pytest.raises(StructureError):
        default_involution(ts, None)
    assert default_involution(Graph.from_edges(2, []), None) == GRAPHS


def test_pivot_shape_hangs_the_pivot_on_the_root(c5):
    shape = pivot_shape(c5, GRAPHS, pivot=2)
    assert nx.is_tree(shape)
    assert shape.graph['pivot'] == 2
    assert shape.degree(2) == 1
    # switching C5 at a vertex leaves P4, which is prime
    assert [kind for _, kind in shape.nodes(data='kind') if kind != LEAF] == [PRIME]


def test_tiny_trees():
    single = imd_tree(Graph.from_edges(1, []))
    assert not single.arcs and single.sinks() == [0]
    assert enumerate_involution_modules_from_tree(single, 10) == [frozenset({0})]
    pair = imd_tree(Graph.from_edges(2, [(0, 1)]))
    assert pair.arcs == {(0, 1), (1, 0)}
    assert pair.double_arcs() == [(0, 1)]
    assert pair.sinks() == [0, 1]
    assert enumerate_involution_modules_from_tree(pair, 10) == [frozenset({0}), frozenset({1}), frozenset({0, 1})]


def test_complete_graph_family_is_every_subset(complete5):
    tree = imd_tree(complete5)
    family = enumerate_involution_modules_from_tree(tree, 1 << 10)
    assert len(family) == 2 ** 5 - 1
    with pytest.raises(CapExceededError):
        enumerate_involution_modules_from_tree(tree, 8)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9), st.integers(0, 8))
def test_graph_tree_matches_brute_force(g, pivot):
    tree = imd_tree(g, pivot=pivot % g.n)
    expected = BruteForceOracle().brute_involution_modules(g, GRAPHS)
    assert enumerate_involution_modules_from_tree(tree, 1 << 12) == expected


@settings(max_examples=80, deadline=None)
@given(two_structures(max_n=7), st.integers(0, 6))
def test_two_structure_tree_matches_brute_force(ts, pivot):
    tree = imd_tree(ts, FOUR_COLORS, pivot=pivot % ts.n)
    expected = BruteForceOracle().brute_involution_modules(ts, FOUR_COLORS)
    assert enumerate_involution_modules_from_tree(tree, 1 << 12) == expected


@settings(max_examples=80, deadline=None)
@given(graphs(min_n=3, max_n=14))
def test_graph_trees_carry_both_arcs_on_every_edge(g):
    tree = imd_tree(g)
    assert len(tree.arcs) == 2 * tree.shape.number_of_edges()
    assert tree.sinks() == sorted(tree.shape.nodes)
    assert tree.sink_structure_holds()


@settings(max_examples=80, deadline=None)
@given(two_structures(min_n=3, max_n=9), st.integers(0, 8))
def test_sinks_form_a_subtree_joined_by_the_double_arcs(ts, pivot):
    tree = imd_tree(ts, FOUR_COLORS, pivot=pivot % ts.n)
    assert tree.sink_structure_holds()
    sides = tree.sides()
    # every edge keeps at least one member side
    for a, b in tree.shape.edges:
        assert (a, b) in tree.arcs or (b, a) in tree.arcs
    for a, b in tree.arcs:
        assert is_involution_module(ts, FOUR_COLORS, sides[(a, b)])


def test_p4_tree_has_two_complete_nodes(p4):
    tree = imd_tree(p4)
    internal = tree.internal_nodes()
    assert [tree.kind(node) for node in internal] == [COMPLETE, COMPLETE]
    first, second = internal
    assert tree.shape.has_edge(first, second)
    leaf_groups = sorted(sorted(other for other in tree.shape.neighbors(node) if tree.kind(other) == LEAF)
                         for node in internal)
    assert leaf_groups == [[0, 3], [1, 2]]
    assert len(enumerate_involution_modules_from_tree(tree, 100)) == 11


def test_unions_at_a_node_with_one_way_arcs():
    # P3 on 2, 3, 4 plus two isolated vertices
    g = Graph.from_edges(5, [(2, 3), (2, 4)])
    family = enumerate_involution_modules_from_tree(imd_tree(g), 100)
    assert frozenset({0, 1, 2, 3}) in family
    assert frozenset({0, 1, 2, 4}) in family
    assert family == BruteForceOracle().brute_involution_modules(g, GRAPHS)


def test_complete_sink_with_a_single_double_arc(four_colors):
    # 3 sees everyone in color 2, the rest see each other in color 0
    ts = TwoStructure.from_pairs(4, 4, {(0, 1): 0, (0, 2): 0, (0, 3): 2, (1, 2): 0, (1, 3): 2, (2, 3): 2})
    tree = imd_tree(ts, four_colors)
    (hub,) = tree.internal_nodes()
    assert tree.kind(hub) == COMPLETE and tree.shape.degree(hub) == 4
    assert tree.double_arcs() == [tuple(sorted((hub, 3)))]
    assert tree.union_branches(hub) == [0, 1, 2]
    family = enumerate_involution_modules_from_tree(tree, 100)
    assert len(family) == 9
    assert family == BruteForceOracle().brute_involution_modules(ts, four_colors)


def test_inconsistent_double_arcs_at_a_complete_node_are_rejected():
    tree = imd_tree(Graph.from_edges(5, []))
    (hub,) = tree.internal_nodes()
    leaves = sorted(tree.shape.neighbors(hub))
    # keep the double arcs on two of the five edges only
    arcs = {(leaf, hub) for leaf in leaves} | {(hub, leaf) for leaf in leaves[:2]}
    broken = type(tree)(tree.shape, tree.n, tree.pivot, frozenset(arcs))
    with pytest.raises(StructureError):
        broken.union_branches(hub)


def _check_pivot_switch_modules(ts, involution, pivot):
    switched = switch_at_pivot(ts, involution, pivot)
    others = [v for v in range(ts.n) if v != pivot]
    for size in range(len(others) + 1):
        for chosen in combinations(others, size):
            inside = frozenset(chosen) | {pivot}
            rest = frozenset(range(ts.n)) - inside
            positions = [i for i, v in enumerate(switched.kept) if v in rest]
            expected = (is_involution_module(ts, involution, inside)
                        or is_involution_module(ts, involution, rest))
            assert is_module(switched.structure, positions) == expected, (sorted(inside), pivot)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=7), st.integers(0, 6))
def test_pivot_switch_turns_involution_modules_into_modules(g, pivot):
    _check_pivot_switch_modules(g, GRAPHS, pivot % g.n)


@settings(max_examples=60, deadline=None)
@given(two_structures(min_n=2, max_n=7), st.integers(0, 6))
def test_pivot_switch_of_a_two_structure_turns_involution_modules_into_modules(ts, pivot):
    _check_pivot_switch_modules(ts, FOUR_COLORS, pivot % ts.n)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8))
def test_family_is_closed_under_complementing_the_graph(g):
    oracle = BruteForceOracle()
    assert oracle.brute_involution_modules(g, GRAPHS) == oracle.brute_involution_modules(complement(g), GRAPHS)
