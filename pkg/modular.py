import logging
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence

import networkx as nx
import numpy as np

from errors import CapExceededError, NotCographError, StructureError
from two_structure import Graph, TwoStructure, VertexSet, canonical_order, vertex_set

logger = logging.getLogger(__name__)

LEAF = 'leaf'
PRIME = 'prime'
COMPLETE = 'complete'


@dataclass(eq=False)
class DecompNode:
    """
    Node of a strong-module tree; `leaves` is the strong module it stands for
    """

    kind: str
    leaves: VertexSet
    children: List['DecompNode'] = field(default_factory=list)
    # color between any two children of a complete node
    color: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    @property
    def vertex(self) -> int:
        if not self.is_leaf:
            raise StructureError("only leaves carry a vertex")
        return next(iter(self.leaves))

    @property
    def min_vertex(self) -> int:
        return min(self.leaves)


@dataclass(eq=False)
class DecompTree:
    root: DecompNode
    n: int
    is_graph: bool = False

    def nodes(self) -> Iterator[DecompNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def internal_nodes(self) -> List[DecompNode]:
        return [node for node in self.nodes() if not node.is_leaf]

    def prime_nodes(self) -> List[DecompNode]:
        return [node for node in self.nodes() if node.kind == PRIME]

    def label(self, node: DecompNode) -> str:
        """
        Display label; complete nodes of a graph read as series or parallel
        """
        if node.kind == COMPLETE and self.is_graph:
            return 'series' if node.color == 1 else 'parallel'
        return node.kind


def is_module(ts: TwoStructure, members) -> bool:
    module = vertex_set(members, ts.n)
    if len(module) <= 1 or len(module) == ts.n:
        return True
    inside = np.asarray(sorted(module), dtype=np.intp)
    outside = np.asarray([v for v in range(ts.n) if v not in module], dtype=np.intp)
    block = ts.colors[np.ix_(outside, inside)]
    return bool((block == block[:, :1]).all())


def _complete_split(block: np.ndarray):
    """
    Return (color, components) when the local root is complete, else None.

    Pairs of any color other than c link vertices; more than one connected
    component means all children meet in color c.
    """
    for c in np.unique(block[0, 1:]).tolist():
        linked = (block != c)
        np.fill_diagonal(linked, False)
        components = list(nx.connected_components(nx.from_numpy_array(linked.astype(np.int8))))
        if len(components) > 1:
            return int(c), [sorted(component) for component in components]
    return None


def _maximal_modules_avoiding(block: np.ndarray, x: int) -> List[List[int]]:
    """
    Partition refinement from {x}, V minus {x}: the result minus {x} is the
    family of maximal modules not containing x.
    """
    size = block.shape[0]
    parts: List[List[int]] = [[x], [v for v in range(size) if v != x]]
    part_of = np.zeros(size, dtype=np.intp)
    part_of[x] = 0
    part_of[parts[1]] = 1
    queue = deque([x])
    queued = np.zeros(size, dtype=bool)
    queued[x] = True

    while queue:
        z = queue.popleft()
        queued[z] = False
        for index in range(len(parts)):
            part = parts[index]
            if part_of[z] == index or len(part) < 2:
                continue
            seen = block[z, part]
            keys, labels = np.unique(seen, return_inverse=True)
            if len(keys) == 1:
                continue
            pieces = [[part[i] for i in np.flatnonzero(labels == k)] for k in range(len(keys))]
            parts[index] = pieces[0]
            for piece in pieces[1:]:
                part_of[piece] = len(parts)
                parts.append(piece)
            for v in part:
                if not queued[v]:
                    queued[v] = True
                    queue.append(v)
    return parts[1:]


def _closure_is_everything(block: np.ndarray, x: int, y: int) -> bool:
    """
    Whether the smallest module containing x and y is the whole local set
    """
    size = block.shape[0]
    inside = np.zeros(size, dtype=bool)
    inside[[x, y]] = True
    while not inside.all():
        frontier = (block[inside] != block[x]).any(axis=0) & ~inside
        if not frontier.any():
            return False
        inside |= frontier
    return True


def _split(block: np.ndarray):
    complete = _complete_split(block)
    if complete is not None:
        color, components = complete
        return COMPLETE, color, components
    x = 0
    holding_x = [x]
    children = []
    for part in _maximal_modules_avoiding(block, x):
        if _closure_is_everything(block, x, part[0]):
            children.append(part)
        else:
            holding_x.extend(part)
    children.append(sorted(holding_x))
    return PRIME, None, children


def modular_decomposition(ts: TwoStructure) -> DecompTree:
    """
    Build the strong-module tree with an explicit work stack
    """
    if ts.n < 1:
        raise StructureError("modular decomposition needs at least one vertex")

    def make(members: Sequence[int]) -> DecompNode:
        kind = LEAF if len(members) == 1 else PRIME
        return DecompNode(kind=kind, leaves=frozenset(members))

    root = make(range(ts.n))
    stack = [root]
    while stack:
        node = stack.pop()
        if node.is_leaf:
            continue
        order = np.asarray(sorted(node.leaves), dtype=np.intp)
        block = ts.colors[np.ix_(order, order)]
        kind, color, groups = _split(block)
        node.kind = kind
        node.color = color
        members = [[int(order[i]) for i in group] for group in groups]
        node.children = sorted((make(group) for group in members), key=lambda child: child.min_vertex)
        stack.extend(node.children)

    tree = DecompTree(root=root, n=ts.n, is_graph=ts.num_colors == 2)
    logger.debug("modular decomposition of n=%d: %d internal nodes", ts.n, len(tree.internal_nodes()))
    return tree


def projected_module_count(tree: DecompTree) -> int:
    total = 0
    for node in tree.nodes():
        total += 1
        if node.kind == COMPLETE:
            k = len(node.children)
            total += 2 ** k - k - 2
    return total


def enumerate_modules_from_tree(tree: DecompTree, cap: int) -> List[VertexSet]:
    projected = projected_module_count(tree)
    if projected > cap:
        raise CapExceededError('module family', cap, projected)
    family = []
    for node in tree.nodes():
        family.append(node.leaves)
        if node.kind == COMPLETE:
            k = len(node.children)
            for size in range(2, k):
                for chosen in combinations(node.children, size):
                    family.append(frozenset().union(*(child.leaves for child in chosen)))
    return canonical_order(family)


def is_cograph(g: TwoStructure) -> bool:
    if g.num_colors != 2:
        raise StructureError("cograph recognition is defined on graphs")
    return not modular_decomposition(g).prime_nodes()


@dataclass(eq=False)
class CotreeNode:
    kind: str
    leaves: VertexSet
    left: Optional['CotreeNode'] = None
    right: Optional['CotreeNode'] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF

    @property
    def children(self) -> List['CotreeNode']:
        return [] if self.is_leaf else [self.left, self.right]


def _post_order(root):
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(node.children)
    order.reverse()
    return order


def binary_cotree(g: Graph) -> CotreeNode:
    """
    Binary series/parallel tree; k-ary nodes become left-leaning chains
    ordered by smallest vertex.
    """
    tree = modular_decomposition(g)
    primes = tree.prime_nodes()
    if primes:
        raise NotCographError(primes[0].leaves)

    built: Dict[int, CotreeNode] = {}
    for node in _post_order(tree.root):
        if node.is_leaf:
            built[id(node)] = CotreeNode(kind=LEAF, leaves=node.leaves)
            continue
        kind = tree.label(node)
        parts = [built[id(child)] for child in sorted(node.children, key=lambda c: c.min_vertex)]
        current = parts[0]
        for part in parts[1:]:
            current = CotreeNode(kind=kind, leaves=current.leaves | part.leaves, left=current, right=part)
        built[id(node)] = current
    return built[id(tree.root)]


def graph_from_cotree(root: CotreeNode, n: int) -> Graph:
    """
    Rebuild a graph: series nodes join their two sides, parallel nodes do not
    """
    adjacency = np.zeros((n, n), dtype=np.int32)
    for node in _post_order(root):
        if node.kind == 'series':
            left = np.asarray(sorted(node.left.leaves), dtype=np.intp)
            right = np.asarray(sorted(node.right.leaves), dtype=np.intp)
            adjacency[np.ix_(left, right)] = 1
            adjacency[np.ix_(right, left)] = 1
    return Graph.from_adjacency(adjacency)
