import numpy as np
from hypothesis import strategies as st

from switch_cograph import random_switch_cograph
from two_structure import ColorInvolution, Graph, TwoStructure

FOUR_COLORS = ColorInvolution.from_pairs(4, [(0, 1), (2, 3)])


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    upper = np.triu(np.array(bits, dtype=bool).reshape(n, n), k=1)
    return Graph.from_adjacency((upper | upper.T).astype(np.int32))


@st.composite
def two_structures(draw, min_n=1, max_n=6, num_colors=4):
    n = draw(st.integers(min_n, max_n))
    values = draw(st.lists(st.integers(0, num_colors - 1), min_size=n * n, max_size=n * n))
    upper = np.triu(np.array(values, dtype=np.int32).reshape(n, n), k=1)
    return TwoStructure(upper + upper.T, num_colors)


@st.composite
def switch_cographs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    antitwin_prob = draw(st.sampled_from([0.0, 0.3, 0.5, 1.0]))
    return random_switch_cograph(n, seed=seed, antitwin_prob=antitwin_prob)
