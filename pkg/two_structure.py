import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from errors import StructureError

logger = logging.getLogger(__name__)

VertexSet = FrozenSet[int]

NO_COLOR = -1


def vertex_set(vertices: Iterable[int], n: int) -> VertexSet:
    """
    Build a vertex set over 0..n-1, rejecting out-of-range members
    """
    members = frozenset(int(v) for v in vertices)
    for v in members:
        if v < 0 or v >= n:
            raise StructureError(f"vertex {v} outside 0..{n - 1}")
    return members


def canonical_order(family: Iterable[VertexSet]) -> List[VertexSet]:
    """Size first, then lexicographic on sorted members."""
    return sorted(set(family), key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True, eq=False)
class TwoStructure:
    """
    Symmetric complete edge-coloring of the vertex set 0..n-1.

    The color matrix is dense and read-only; the diagonal holds NO_COLOR.
    """

    colors: np.ndarray
    num_colors: int

    def __post_init__(self):
        matrix = np.array(self.colors, dtype=np.int32, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise StructureError("color matrix must be square")
        if self.num_colors < 1:
            raise StructureError("num_colors must be positive")
        n = matrix.shape[0]
        np.fill_diagonal(matrix, NO_COLOR)
        if not np.array_equal(matrix, matrix.T):
            u, v = np.argwhere(matrix != matrix.T)[0]
            raise StructureError(f"asymmetric colors at pair ({u}, {v})")
        off_diagonal = matrix[~np.eye(n, dtype=bool)]
        if off_diagonal.size and (off_diagonal.min() < 0 or off_diagonal.max() >= self.num_colors):
            raise StructureError(f"color ids must lie in 0..{self.num_colors - 1}")
        matrix.setflags(write=False)
        object.__setattr__(self, 'colors', matrix)

    @property
    def n(self) -> int:
        return self.colors.shape[0]

    def vertices(self) -> range:
        return range(self.n)

    def color(self, u: int, v: int) -> int:
        if u == v:
            raise StructureError("self-pairs carry no color")
        return int(self.colors[u, v])

    def used_colors(self) -> List[int]:
        mask = ~np.eye(self.n, dtype=bool)
        return sorted(int(c) for c in np.unique(self.colors[mask]))

    @classmethod
    def from_pairs(cls, n: int, num_colors: int, pairs: Dict[Tuple[int, int], int], default: int = 0):
        matrix = np.full((n, n), default, dtype=np.int32)
        for (u, v), c in pairs.items():
            if u == v:
                raise StructureError(f"self-pair ({u}, {v}) cannot be colored")
            matrix[u, v] = c
            matrix[v, u] = c
        return cls(matrix, num_colors)

    def __eq__(self, other):
        if not isinstance(other, TwoStructure):
            return NotImplemented
        return self.num_colors == other.num_colors and np.array_equal(self.colors, other.colors)

    __hash__ = None

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, num_colors={self.num_colors})"


class Graph(TwoStructure):
    """
    Two-color structure: color 1 is an edge, color 0 a non-edge
    """

    def __init__(self, colors: np.ndarray, num_colors: int = 2):
        if num_colors != 2:
            raise StructureError("a graph has exactly two colors")
        super().__init__(colors, 2)

    @classmethod
    def from_adjacency(cls, adjacency: np.ndarray) -> 'Graph':
        return cls(np.asarray(adjacency, dtype=np.int32))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> 'Graph':
        matrix = np.zeros((n, n), dtype=np.int32)
        for u, v in edges:
            if u == v:
                raise StructureError(f"loop at vertex {u}")
            matrix[u, v] = 1
            matrix[v, u] = 1
        return cls(matrix)

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Graph':
        order = sorted(graph.nodes())
        index = {node: i for i, node in enumerate(order)}
        return cls.from_edges(len(order), ((index[u], index[v]) for u, v in graph.edges()))

    @property
    def adjacency(self) -> np.ndarray:
        return self.colors == 1

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.colors[u, v] == 1)

    def neighbors(self, v: int) -> VertexSet:
        return frozenset(int(u) for u in np.flatnonzero(self.colors[v] == 1))

    def edges(self) -> List[Tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self.colors == 1, k=1))
        return [(int(u), int(v)) for u, v in zip(rows, cols)]

    def edge_count(self) -> int:
        return int(np.triu(self.colors == 1, k=1).sum())

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph


@dataclass(frozen=True)
class ColorInvolution:
    """
    Fixed-point-free involution on color ids 0..len(mapping)-1
    """

    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(c) for c in self.mapping)
        size = len(mapping)
        if size == 0 or size % 2:
            raise StructureError("an involution without fixed points needs an even, nonzero color count")
        for color, image in enumerate(mapping):
            if not 0 <= image < size:
                raise StructureError(f"involution image {image} out of range")
            if image == color:
                raise StructureError(f"color {color} is a fixed point")
            if mapping[image] != color:
                raise StructureError(f"mapping is not an involution at color {color}")
        object.__setattr__(self, 'mapping', mapping)

    @classmethod
    def for_graphs(cls) -> 'ColorInvolution':
        return cls((1, 0))

    @classmethod
    def from_pairs(cls, num_colors: int, pairs: Sequence[Tuple[int, int]]) -> 'ColorInvolution':
        mapping = [-1] * num_colors
        for a, b in pairs:
            for c in (a, b):
                if not 0 <= c < num_colors:
                    raise StructureError(f"involution color {c} out of range")
                if mapping[c] != -1:
                    raise StructureError(f"color {c} paired twice")
            mapping[a] = b
            mapping[b] = a
        missing = [c for c, image in enumerate(mapping) if image == -1]
        if missing:
            raise StructureError(f"colors {missing} have no involution partner")
        return cls(tuple(mapping))

    @property
    def num_colors(self) -> int:
        return len(self.mapping)

    @property
    def table(self) -> np.ndarray:
        return np.asarray(self.mapping, dtype=np.int32)

    def __call__(self, color: int) -> int:
        return self.mapping[color]

    def check_covers(self, ts: TwoStructure) -> None:
        if ts.num_colors > self.num_colors:
            raise StructureError(
                f"involution covers {self.num_colors} colors but the structure uses {ts.num_colors}")


def induced(ts: TwoStructure, subset: Iterable[int]) -> Tuple[TwoStructure, Tuple[int, ...]]:
    """
    Substructure on the given vertices, relabeled 0..|S|-1 in increasing order.

    Returns the substructure and the map from new ids to original ids.
    """
    order = tuple(sorted(set(int(v) for v in subset)))
    if not order:
        raise StructureError("empty induced set")
    if order[0] < 0 or order[-1] >= ts.n:
        raise StructureError("induced set leaves the vertex range")
    index = np.asarray(order)
    sub = ts.colors[np.ix_(index, index)]
    if isinstance(ts, Graph):
        return Graph(sub), order
    return TwoStructure(sub, ts.num_colors), order


def complement(g: Graph) -> Graph:
    if g.num_colors != 2:
        raise StructureError("complement is defined on graphs")
    return Graph(1 - g.colors)


def as_graph(ts: TwoStructure) -> Graph:
    if isinstance(ts, Graph):
        return ts
    if ts.num_colors != 2:
        raise StructureError(f"expected a graph, got {ts.num_colors} colors")
    return Graph(ts.colors)
