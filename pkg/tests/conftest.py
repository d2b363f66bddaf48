import os
import sys

import networkx as nx
import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from two_structure import ColorInvolution, Graph, TwoStructure  # noqa: E402


def graph_of(nx_graph: nx.Graph) -> Graph:
    return Graph.from_networkx(nx_graph)


@pytest.fixture
def p4():
    return graph_of(nx.path_graph(4))


@pytest.fixture
def c4():
    return graph_of(nx.cycle_graph(4))


@pytest.fixture
def c5():
    return graph_of(nx.cycle_graph(5))


@pytest.fixture
def bull():
    return graph_of(nx.bull_graph())


@pytest.fixture
def gem():
    graph = nx.path_graph(4)
    graph.add_edges_from((4, v) for v in range(4))
    return graph_of(graph)


@pytest.fixture
def co_gem(gem):
    return graph_of(nx.complement(gem.to_networkx()))


@pytest.fixture
def complete5():
    return graph_of(nx.complete_graph(5))


@pytest.fixture
def four_colors():
    return ColorInvolution.from_pairs(4, [(0, 1), (2, 3)])


@pytest.fixture
def umodule_instance():
    """
    {0,2,4} and {0,3,4} are umodules whose intersection {0,4} is not
    """
    pairs = {
        (0, 1): 0, (0, 2): 1, (0, 3): 1, (0, 4): 0, (1, 2): 0,
        (1, 3): 0, (1, 4): 0, (2, 3): 1, (2, 4): 1, (3, 4): 2,
    }
    return TwoStructure.from_pairs(5, 3, pairs)


@pytest.fixture
def rng():
    return np.random.default_rng(7)
