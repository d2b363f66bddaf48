import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from networkx.utils import py_random_state

from errors import NotSwitchCographError, StructureError
from involution_modules import edge_sides, pivot_shape
from modular import LEAF, PRIME, is_cograph
from switch_ops import seidel_switch
from two_structure import ColorInvolution, Graph, VertexSet, as_graph, induced

logger = logging.getLogger(__name__)

CLIQUE = 'clique'
BIPARTITE = 'bipartite'


def _gem() -> nx.Graph:
    gem = nx.path_graph(4)
    gem.add_edges_from((4, v) for v in range(4))
    return gem


FORBIDDEN_GRAPHS: Dict[str, nx.Graph] = {
    'Gem': _gem(),
    'Co-gem': nx.complement(_gem()),
    'Bull': nx.bull_graph(),
    'C5': nx.cycle_graph(5),
}
FORBIDDEN_EDGE_COUNTS = {name: graph.number_of_edges() for name, graph in FORBIDDEN_GRAPHS.items()}


@dataclass(frozen=True)
class ForbiddenWitness:
    name: str
    vertices: Tuple[int, ...]


def _prime_vertices(shape: nx.Graph, n: int) -> Optional[VertexSet]:
    primes = sorted(node for node, kind in shape.nodes(data='kind') if kind == PRIME)
    if not primes:
        return None
    parent = nx.dfs_predecessors(shape, 0)
    return edge_sides(shape, n)[(primes[0], parent[primes[0]])]


def is_switch_cograph(g: Graph) -> bool:
    g = as_graph(g)
    shape = pivot_shape(g, ColorInvolution.for_graphs(), 0)
    return all(kind != PRIME for _, kind in shape.nodes(data='kind'))


def is_switch_cograph_by_seidel(g: Graph) -> bool:
    """
    Seidel switch at vertex 0, then test for a cograph
    """
    g = as_graph(g)
    if g.n < 2:
        return True
    return is_cograph(seidel_switch(g, 0))


def forbidden_subgraph_witness(g: Graph) -> Optional[ForbiddenWitness]:
    g = as_graph(g)
    adjacency = g.adjacency.astype(np.int8)
    wanted = set(FORBIDDEN_EDGE_COUNTS.values())
    for chosen in combinations(range(g.n), 5):
        index = np.asarray(chosen, dtype=np.intp)
        block = adjacency[np.ix_(index, index)]
        edges = int(block.sum()) // 2
        if edges not in wanted:
            continue
        candidate = nx.from_numpy_array(block)
        for name, template in FORBIDDEN_GRAPHS.items():
            if FORBIDDEN_EDGE_COUNTS[name] == edges and nx.is_isomorphic(candidate, template):
                return ForbiddenWitness(name, chosen)
    return None


@py_random_state('seed')
def random_switch_cograph(n: int, seed=None, antitwin_prob: float = 0.5) -> Graph:
    """
    Grow a graph by twins and antitwins of uniformly chosen vertices.

    The new vertex's edge to its template is a fair coin in both cases.
    """
    if n < 1:
        raise StructureError("a switch cograph needs at least one vertex")
    if not 0.0 <= antitwin_prob <= 1.0:
        raise StructureError(f"antitwin probability {antitwin_prob} outside [0, 1]")
    adjacency = np.zeros((n, n), dtype=bool)
    for new in range(1, n):
        template = seed.randrange(new)
        row = adjacency[template, :new].copy()
        if seed.random() < antitwin_prob:
            row = ~row
        row[template] = seed.random() < 0.5
        adjacency[new, :new] = row
        adjacency[:new, new] = row
    return Graph.from_adjacency(adjacency.astype(np.int32))


@dataclass(eq=False)
class ImdtNode:
    """
    Node of the binary involution-modular decomposition tree.

    part1/part2 are N1/N2; part1 holds the smallest leaf. When flip_left is
    set the left child's part2 is the piece that lands in part1 here (and
    likewise for the right child).
    """

    leaves: VertexSet
    part1: VertexSet
    part2: VertexSet
    kind: str = LEAF
    left: Optional['ImdtNode'] = None
    right: Optional['ImdtNode'] = None
    flip_left: bool = False
    flip_right: bool = False
    is_root: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    @property
    def children(self) -> List['ImdtNode']:
        return [] if self.is_leaf else [self.left, self.right]

    def left_parts(self) -> Tuple[VertexSet, VertexSet]:
        return _aligned(self.left, self.flip_left)

    def right_parts(self) -> Tuple[VertexSet, VertexSet]:
        return _aligned(self.right, self.flip_right)


def _aligned(child: ImdtNode, flip: bool) -> Tuple[VertexSet, VertexSet]:
    return (child.part2, child.part1) if flip else (child.part1, child.part2)


@dataclass(eq=False)
class BinaryIMDT:
    root: ImdtNode
    n: int

    def postorder(self) -> List[ImdtNode]:
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node)
            stack.extend(node.children)
        order.reverse()
        return order

    def internal_nodes(self) -> List[ImdtNode]:
        return [node for node in self.postorder() if not node.is_leaf]


def _leaf(v: int) -> ImdtNode:
    single = frozenset([v])
    return ImdtNode(leaves=single, part1=single, part2=frozenset())


def _bipartition(adjacency: np.ndarray, leaves: VertexSet) -> Tuple[VertexSet, VertexSet]:
    witness = min(v for v in range(adjacency.shape[0]) if v not in leaves)
    seen = frozenset(v for v in leaves if adjacency[witness, v])
    unseen = leaves - seen
    first = min(leaves)
    return (seen, unseen) if first in seen else (unseen, seen)


def _combine(adjacency: np.ndarray, a: ImdtNode, b: ImdtNode) -> ImdtNode:
    leaves = a.leaves | b.leaves
    part1, part2 = _bipartition(adjacency, leaves)
    flip_left = min(a.part1) not in part1
    flip_right = min(b.part1) not in part1
    u, v = min(a.leaves), min(b.leaves)
    same_part = (u in part1) == (v in part1)
    kind = CLIQUE if same_part == bool(adjacency[u, v]) else BIPARTITE
    return ImdtNode(leaves, part1, part2, kind, a, b, flip_left, flip_right)


def _combine_root(adjacency: np.ndarray, alpha: ImdtNode, beta: ImdtNode) -> ImdtNode:
    leaves = alpha.leaves | beta.leaves
    u = min(alpha.leaves)
    flip_right = not adjacency[u, min(beta.part1)]
    return ImdtNode(leaves, leaves, frozenset(), CLIQUE, alpha, beta, False, flip_right, is_root=True)


def binary_imdt(g: Graph) -> BinaryIMDT:
    """
    Root on the edge between leaf 0 and its neighbor, binarize complete nodes
    into left-leaning chains ordered by smallest leaf, then read each node's
    bipartition off one outside vertex.
    """
    g = as_graph(g)
    n = g.n
    if n < 1:
        raise StructureError("empty graph")
    if n == 1:
        root = _leaf(0)
        root.is_root = True
        return BinaryIMDT(root, 1)

    shape = pivot_shape(g, ColorInvolution.for_graphs(), 0)
    prime = _prime_vertices(shape, n)
    if prime is not None:
        raise NotSwitchCographError(prime)

    adjacency = g.adjacency
    parent = nx.dfs_predecessors(shape, 0)
    order = list(nx.dfs_preorder_nodes(shape, 0))
    built: Dict[int, ImdtNode] = {}
    for node in reversed(order[1:]):
        if shape.nodes[node]['kind'] == LEAF:
            built[node] = _leaf(node)
            continue
        parts = sorted(
            (built[child] for child in shape.neighbors(node) if child != parent[node]),
            key=lambda part: min(part.leaves),
        )
        current = parts[0]
        for part in parts[1:]:
            current = _combine(adjacency, current, part)
        built[node] = current

    (neighbor,) = list(shape.neighbors(0))
    root = _combine_root(adjacency, _leaf(0), built[neighbor])
    tree = BinaryIMDT(root, n)
    logger.debug("binary IMDT over n=%d with %d internal nodes", n, len(tree.internal_nodes()))
    return tree


def complement_imdt(tree: BinaryIMDT) -> BinaryIMDT:
    """
    Same shape and bipartitions with clique and bipartite exchanged
    """
    copies: Dict[int, ImdtNode] = {}
    for node in tree.postorder():
        if node.is_leaf:
            copy = ImdtNode(node.leaves, node.part1, node.part2, is_root=node.is_root)
        elif node.is_root:
            copy = ImdtNode(node.leaves, node.part1, node.part2, CLIQUE,
                            copies[id(node.left)], copies[id(node.right)],
                            node.flip_left, not node.flip_right, is_root=True)
        else:
            kind = BIPARTITE if node.kind == CLIQUE else CLIQUE
            copy = ImdtNode(node.leaves, node.part1, node.part2, kind,
                            copies[id(node.left)], copies[id(node.right)],
                            node.flip_left, node.flip_right)
        copies[id(node)] = copy
    return BinaryIMDT(copies[id(tree.root)], tree.n)


def _block_value(adjacency: np.ndarray, rows: VertexSet, cols: VertexSet) -> Optional[bool]:
    """True if complete, False if empty, None if mixed; vacuous blocks read as either."""
    if not rows or not cols:
        return None
    block = adjacency[np.ix_(sorted(rows), sorted(cols))]
    if block.all():
        return True
    if not block.any():
        return False
    return None


def audit_binary_imdt(g: Graph, tree: BinaryIMDT) -> List[str]:
    g = as_graph(g)
    adjacency = g.adjacency
    problems = []
    everything = frozenset(range(g.n))
    for node in tree.postorder():
        if node.part1 | node.part2 != node.leaves or node.part1 & node.part2:
            problems.append(f"node {sorted(node.leaves)}: parts do not partition its leaves")
            continue
        if not node.is_root:
            for w in sorted(everything - node.leaves):
                to_first = adjacency[w, sorted(node.part1)]
                to_second = adjacency[w, sorted(node.part2)] if node.part2 else None
                uniform = to_first.all() or not to_first.any()
                if to_second is not None:
                    uniform = uniform and (to_second.all() or not to_second.any()) and to_first[0] != to_second[0]
                if not uniform:
                    problems.append(f"node {sorted(node.leaves)}: vertex {w} does not split the parts")
                    break
            for part in (node.part1, node.part2):
                if part and not is_cograph(induced(g, part)[0]):
                    problems.append(f"node {sorted(node.leaves)}: part {sorted(part)} is not a cograph")
        if node.is_leaf:
            continue
        a1, a2 = node.left_parts()
        b1, b2 = node.right_parts()
        if not node.is_root and (a1 | b1 != node.part1 or a2 | b2 != node.part2):
            problems.append(f"node {sorted(node.leaves)}: child parts are not aligned")
        paired = node.kind == CLIQUE
        expected = {(a1, b1): paired, (a2, b2): paired, (a1, b2): not paired, (a2, b1): not paired}
        for (rows, cols), want in expected.items():
            got = _block_value(adjacency, rows, cols)
            if rows and cols and got is not want:
                problems.append(f"node {sorted(node.leaves)}: block {sorted(rows)} x {sorted(cols)} breaks the {node.kind} pattern")
    return problems
