import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import NotSwitchCographError, StructureError
from modular import is_cograph
from oracles import BruteForceOracle
from switch_cograph import (BIPARTITE, CLIQUE, FORBIDDEN_GRAPHS, audit_binary_imdt, binary_imdt, complement_imdt,
                            forbidden_subgraph_witness, is_switch_cograph, is_switch_cograph_by_seidel,
                            random_switch_cograph)
from two_structure import Graph, complement, induced

from strategies import graphs, switch_cographs


@pytest.mark.parametrize("name", ["gem", "co_gem", "bull", "c5"])
def test_forbidden_graphs_are_rejected(name, request):
    g = request.getfixturevalue(name)
    assert not is_switch_cograph(g)
    assert not is_switch_cograph_by_seidel(g)
    witness = forbidden_subgraph_witness(g)
    assert witness.vertices == (0, 1, 2, 3, 4)
    assert nx.is_isomorphic(g.to_networkx(), FORBIDDEN_GRAPHS[witness.name])


def test_p4_is_a_switch_cograph_but_not_a_cograph(p4):
    assert is_switch_cograph(p4)
    assert not is_cograph(p4)
    assert forbidden_subgraph_witness(p4) is None


def test_witness_in_a_larger_graph(c5):
    graph = nx.cycle_graph(5)
    graph.add_edge(5, 0)
    g = Graph.from_networkx(graph)
    witness = forbidden_subgraph_witness(g)
    assert witness.name == 'C5'
    sub, _ = induced(g, witness.vertices)
    assert sub == c5


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_three_recognition_routes_agree(g):
    by_tree = is_switch_cograph(g)
    assert by_tree == is_switch_cograph_by_seidel(g)
    assert by_tree == (forbidden_subgraph_witness(g) is None)


def test_atlas_graphs_up_to_six_vertices():
    for graph in nx.graph_atlas_g()[1:209]:
        g = Graph.from_networkx(graph)
        assert is_switch_cograph(g) == (forbidden_subgraph_witness(g) is None), graph.graph


@settings(max_examples=60, deadline=None)
@given(switch_cographs(max_n=40))
def test_generator_output_is_recognized(g):
    assert is_switch_cograph(g)


def test_generator_is_reproducible_and_twin_only_gives_cographs():
    assert random_switch_cograph(30, seed=4) == random_switch_cograph(30, seed=4)
    for seed in range(20):
        assert is_cograph(random_switch_cograph(25, seed=seed, antitwin_prob=0.0))
    with pytest.raises(StructureError):
        random_switch_cograph(0)
    with pytest.raises(StructureError):
        random_switch_cograph(5, antitwin_prob=1.5)


def test_binary_tree_of_p4(p4):
    tree = binary_imdt(p4)
    assert tree.root.is_root and tree.root.kind == CLIQUE
    assert tree.root.leaves == frozenset(range(4))
    assert len(tree.internal_nodes()) == 3
    assert audit_binary_imdt(p4, tree) == []


def test_single_vertex_tree():
    tree = binary_imdt(Graph.from_edges(1, []))
    assert tree.root.is_leaf and tree.root.is_root


def test_binary_tree_rejects_prime_input(bull):
    with pytest.raises(NotSwitchCographError) as info:
        binary_imdt(bull)
    assert len(info.value.prime_vertices) >= 4


@settings(max_examples=80, deadline=None)
@given(switch_cographs(max_n=20))
def test_binary_tree_passes_audit(g):
    tree = binary_imdt(g)
    assert audit_binary_imdt(g, tree) == []
    for node in tree.postorder():
        assert min(node.leaves) in node.part1
        assert node.kind in (CLIQUE, BIPARTITE) or node.is_leaf


@settings(max_examples=60, deadline=None)
@given(switch_cographs(max_n=16))
def test_complement_tree_describes_the_complement(g):
    swapped = complement_imdt(binary_imdt(g))
    assert audit_binary_imdt(complement(g), swapped) == []


@settings(max_examples=40, deadline=None)
@given(switch_cographs(max_n=14), st.integers(0, 2 ** 16))
def test_generated_switch_cographs_are_perfect(g, seed):
    assert BruteForceOracle().perfection_violations(g, samples=20, seed=seed) == []
