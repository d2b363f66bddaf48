import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import CapExceededError
from involution_modules import is_involution_module
from oracles import (BruteForceOracle, closure_check, is_involution_module_by_pairs, is_umodule, random_two_structure,
                     search_umodule_intersection_violation)
from two_structure import ColorInvolution, Graph

from strategies import FOUR_COLORS, graphs, two_structures


def test_umodule_counterexample(umodule_instance):
    assert is_umodule(umodule_instance, [0, 2, 4])
    assert is_umodule(umodule_instance, [0, 3, 4])
    assert not is_umodule(umodule_instance, [0, 4])
    report = closure_check(BruteForceOracle().brute_umodules(umodule_instance), 5)
    assert not report.closed
    assert any(v.operation == 'intersection' and v.result == frozenset({0, 4}) for v in report.violations)


def test_closure_check_on_a_closed_family():
    family = [frozenset({0}), frozenset({1}), frozenset({2}), frozenset({0, 1}), frozenset({1, 2}),
              frozenset({0, 2}), frozenset({0, 1, 2})]
    assert closure_check(family, 3).closed


def test_closure_check_reports_missing_pieces():
    report = closure_check([frozenset({0, 1}), frozenset({1, 2})], 4)
    operations = sorted({v.operation for v in report.violations})
    assert operations == ['difference', 'intersection', 'symmetric difference', 'union']


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=9))
def test_graph_involution_modules_are_closed(g):
    family = BruteForceOracle().brute_involution_modules(g, ColorInvolution.for_graphs())
    assert closure_check(family, g.n).closed


@settings(max_examples=40, deadline=None)
@given(two_structures(max_n=6))
def test_two_structure_involution_modules_are_closed(ts):
    family = BruteForceOracle().brute_involution_modules(ts, FOUR_COLORS)
    assert closure_check(family, ts.n).closed


def test_caps_are_enforced_and_overridable(p4):
    oracle = BruteForceOracle({'clique': 3})
    with pytest.raises(CapExceededError):
        oracle.brute_max_clique(p4)
    assert oracle.caps['max-cut'] == 18


def test_brute_force_answers_on_c5(c5):
    oracle = BruteForceOracle()
    assert oracle.brute_max_clique(c5)[0] == 2
    assert oracle.brute_mis(c5)[0] == 2
    assert oracle.brute_vc(c5)[0] == 3
    assert oracle.brute_max_cut(c5)[0] == 4
    assert oracle.brute_chromatic(c5) == 3
    assert oracle.brute_clique_cover(c5) == 3
    value, (first, second) = oracle.brute_vertex_separator(c5)
    assert value == max(len(first), len(second))


def test_separator_of_a_path():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    value, (first, second) = BruteForceOracle().brute_vertex_separator(g)
    assert value == 2
    assert first & second == frozenset({1})


def test_c5_is_not_perfect(c5):
    violations = BruteForceOracle().perfection_violations(c5, samples=200, seed=1)
    assert ((0, 1, 2, 3, 4), 3, 2) in violations


def test_random_two_structure_shape():
    ts = random_two_structure(np.random.default_rng(0), 6, 3)
    assert ts.n == 6 and ts.num_colors == 3


def test_search_finds_a_umodule_violation():
    found = search_umodule_intersection_violation(samples=20000, seed=0)
    assert found is not None
    ts, report = found
    assert report.violations
    assert all(not is_umodule(ts, v.result) for v in report.violations)


def test_pairwise_definition_on_p4(p4):
    graphs_involution = ColorInvolution.for_graphs()
    # the ends of P4 see the middle in complementary colors
    assert is_involution_module_by_pairs(p4, graphs_involution, [0, 3])
    assert not is_involution_module_by_pairs(p4, graphs_involution, [0, 1])
    assert is_involution_module_by_pairs(p4, graphs_involution, [2])


@settings(max_examples=60, deadline=None)
@given(two_structures(max_n=6), st.data())
def test_pairwise_definition_agrees_with_the_fast_test(ts, data):
    members = data.draw(st.sets(st.integers(0, ts.n - 1), min_size=1))
    assert is_involution_module_by_pairs(ts, FOUR_COLORS, members) == is_involution_module(ts, FOUR_COLORS, members)
