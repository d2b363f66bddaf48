import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
import numpy as np

from errors import CapExceededError, StructureError
from modular import COMPLETE, LEAF, modular_decomposition
from switch_ops import switch_at_pivot
from two_structure import ColorInvolution, TwoStructure, VertexSet, canonical_order, vertex_set

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

PATTERN_MIXED = 'pattern1'
PATTERN_FOREIGN = 'pattern2'


def default_involution(ts: TwoStructure, involution: Optional[ColorInvolution]) -> ColorInvolution:
    if involution is not None:
        involution.check_covers(ts)
        return involution
    if ts.num_colors == 2:
        return ColorInvolution.for_graphs()
    raise StructureError("a color involution is required beyond two colors")


def _split_outside(ts: TwoStructure, members: VertexSet):
    inside = np.asarray(sorted(members), dtype=np.intp)
    outside = np.asarray([v for v in range(ts.n) if v not in members], dtype=np.intp)
    return inside, outside


def _rows_agree(rows: np.ndarray, involution: ColorInvolution) -> bool:
    reference = rows[0]
    mirrored = involution.table[reference]
    return bool(((rows == reference).all(axis=1) | (rows == mirrored).all(axis=1)).all())


def is_involution_module(ts: TwoStructure, involution: ColorInvolution, members) -> bool:
    """
    Every member sees the outside either exactly like the smallest member
    or exactly like its image under the involution.
    """
    involution.check_covers(ts)
    module = vertex_set(members, ts.n)
    if len(module) <= 1 or len(module) == ts.n:
        return True
    inside, outside = _split_outside(ts, module)
    return _rows_agree(ts.colors[np.ix_(inside, outside)], involution)


@dataclass(frozen=True)
class PatternWitness:
    """
    pattern1: u agrees with v on a but is involuted on b.
    pattern2: u sees a in a color that is neither E(v,a) nor its image.
    """

    kind: str
    u: int
    v: int
    a: int
    b: Optional[int]
    colors: Tuple[int, ...]


def find_forbidden_pattern(ts: TwoStructure, involution: ColorInvolution, members) -> Optional[PatternWitness]:
    involution.check_covers(ts)
    module = vertex_set(members, ts.n)
    if len(module) < 2 or len(module) == ts.n:
        return None
    inside, outside = _split_outside(ts, module)
    rows = ts.colors[np.ix_(inside, outside)]
    reference = rows[0]
    mirrored = involution.table[reference]
    ref = int(inside[0])

    for index in range(1, len(inside)):
        u = int(inside[index])
        row = rows[index]
        same = row == reference
        flipped = row == mirrored
        foreign = np.flatnonzero(~(same | flipped))
        if foreign.size:
            a = int(outside[foreign[0]])
            return PatternWitness(PATTERN_FOREIGN, u, ref, a, None, (ts.color(ref, a), ts.color(u, a)))
        if same.any() and flipped.any():
            a = int(outside[np.flatnonzero(same)[0]])
            b = int(outside[np.flatnonzero(flipped)[0]])
            colors = (ts.color(ref, a), ts.color(u, a), ts.color(ref, b), ts.color(u, b))
            return PatternWitness(PATTERN_MIXED, u, ref, a, b, colors)
    return None


def pivot_shape(ts: TwoStructure, involution: ColorInvolution, pivot: int = 0) -> nx.Graph:
    """
    Undirected labeled tree: the modular tree of the structure switched at
    `pivot`, with the pivot leaf hung on its root.

    Leaf nodes are the vertex ids 0..n-1; internal nodes are numbered from n.
    """
    n = ts.n
    if not 0 <= pivot < max(n, 1):
        raise StructureError(f"pivot {pivot} is not a vertex")
    shape = nx.Graph(pivot=pivot)
    shape.add_nodes_from(range(n), kind=LEAF)
    if n <= 2:
        if n == 2:
            shape.add_edge(0, 1)
        return shape

    switched = switch_at_pivot(ts, involution, pivot)
    tree = modular_decomposition(switched.structure)
    logger.debug("pivot %d: switched structure has %d colors", pivot, switched.table.total_colors)

    ids = {}
    next_id = n
    for node in tree.nodes():
        if node.is_leaf:
            ids[id(node)] = switched.kept[node.vertex]
        else:
            ids[id(node)] = next_id
            shape.add_node(next_id, kind=node.kind)
            next_id += 1
    for node in tree.nodes():
        for child in node.children:
            shape.add_edge(ids[id(node)], ids[id(child)])
    shape.add_edge(pivot, ids[id(tree.root)])
    return shape


def _check_shape(shape: nx.Graph, n: int) -> None:
    if shape.number_of_nodes() == 0 or not nx.is_tree(shape):
        raise StructureError("tree shape is not a tree")
    leaves = sorted(node for node, kind in shape.nodes(data='kind') if kind == LEAF)
    if leaves != list(range(n)):
        raise StructureError("tree leaves must be exactly the vertices")
    for node, degree in shape.degree():
        kind = shape.nodes[node]['kind']
        if kind == LEAF and n > 1 and degree != 1:
            raise StructureError(f"leaf {node} has degree {degree}")
        if kind != LEAF and degree < 3:
            raise StructureError(f"internal node {node} has degree {degree}")


def edge_sides(shape: nx.Graph, n: int) -> Dict[Edge, VertexSet]:
    """
    Map (A, B) to the leaves on A's side of the tree edge A-B
    """
    everything = frozenset(range(n))
    parent = nx.dfs_predecessors(shape, 0)
    order = list(nx.dfs_preorder_nodes(shape, 0))
    below: Dict[int, set] = {node: set() for node in order}
    for node in reversed(order):
        if node < n:
            below[node].add(node)
        if node in parent:
            below[parent[node]] |= below[node]
    sides = {}
    for node, up in parent.items():
        inner = frozenset(below[node])
        sides[(node, up)] = inner
        sides[(up, node)] = everything - inner
    return sides


@dataclass(eq=False)
class CrossingFamilyTree:
    """
    Unrooted directed tree for a partitive crossing family.

    An arc (A, B) puts the leaves on A's side of the edge into the family and
    an edge may carry both arcs (a double arc). The sinks, nodes whose edges
    all point at them, form a subtree whose edges are exactly the double
    arcs; every other node has a single out arc.
    """

    shape: nx.Graph
    n: int
    pivot: int
    arcs: FrozenSet[Edge]

    def kind(self, node: int) -> str:
        return self.shape.nodes[node]['kind']

    def internal_nodes(self) -> List[int]:
        return sorted(node for node in self.shape.nodes if self.kind(node) != LEAF)

    def in_neighbors(self, node: int) -> List[int]:
        return sorted(other for other in self.shape.neighbors(node) if (other, node) in self.arcs)

    def double_arcs(self) -> List[Edge]:
        return sorted((a, b) for a, b in self.arcs if a < b and (b, a) in self.arcs)

    def sinks(self) -> List[int]:
        return sorted(node for node in self.shape.nodes
                      if all((other, node) in self.arcs for other in self.shape.neighbors(node)))

    def sink_structure_holds(self) -> bool:
        sinks = self.sinks()
        if not sinks or not nx.is_connected(self.shape.subgraph(sinks)):
            return False
        inside = sorted(tuple(sorted(edge)) for edge in self.shape.subgraph(sinks).edges)
        if inside != self.double_arcs():
            return False
        region = set(sinks)
        return all(
            sum((node, other) in self.arcs for other in self.shape.neighbors(node)) == 1
            for node in self.shape.nodes if node not in region
        )

    def sides(self) -> Dict[Edge, VertexSet]:
        return edge_sides(self.shape, self.n)

    def union_branches(self, node: int) -> List[int]:
        """
        Neighbors whose branches combine into further members at a complete
        node of degree 4 or more.

        Outside the sinks these are the in-branches. At a sink they are all
        branches when every edge is a double arc, and all but one when a
        single edge is.
        """
        if self.kind(node) != COMPLETE or self.shape.degree(node) < 4:
            return []
        neighbors = sorted(self.shape.neighbors(node))
        outward = [other for other in neighbors if (other, node) not in self.arcs]
        if len(outward) > 1:
            raise StructureError(f"node {node} has {len(outward)} out arcs")
        if outward:
            return [other for other in neighbors if other != outward[0]]
        doubles = [other for other in neighbors if (node, other) in self.arcs]
        if len(doubles) == len(neighbors):
            return neighbors
        if len(doubles) == 1:
            return [other for other in neighbors if other != doubles[0]]
        raise StructureError(
            f"complete sink {node} has {len(doubles)} double arcs among {len(neighbors)} edges")

    def projected_family_size(self) -> int:
        total = 1 + len(self.arcs)
        for node in self.internal_nodes():
            branches = len(self.union_branches(node))
            largest = min(branches, self.shape.degree(node) - 2)
            total += sum(comb(branches, size) for size in range(2, largest + 1))
        return total


def _representatives_agree(ts: TwoStructure, involution: ColorInvolution,
                           representatives: List[int], block: List[int]) -> bool:
    """
    Involution-module test of the representatives inside the structure
    induced on them and `block`.
    """
    if len(representatives) < 2:
        return True
    rows = ts.colors[np.ix_(np.asarray(representatives, dtype=np.intp), np.asarray(block, dtype=np.intp))]
    return _rows_agree(rows, involution)


class _EdgeDirector:
    """
    Membership of the side behind every directed tree edge.

    Every tree edge has at least one member side. A union of member branches
    at a node is a member iff one leaf per branch agrees on the rest, and a
    side containing a non-member branch is never a member.
    """

    def __init__(self, shape: nx.Graph, ts: TwoStructure, involution: ColorInvolution):
        self.shape = shape
        self.ts = ts
        self.involution = involution
        self.n = ts.n
        self.sides = edge_sides(shape, ts.n)
        self.representative = {key: min(side) for key, side in self.sides.items()}
        self.member: Dict[Edge, bool] = {}
        self.tests = 0

    def _branch_union_is_member(self, node: int, away: int) -> bool:
        representatives = [self.representative[(other, node)]
                           for other in self.shape.neighbors(node) if other != away]
        self.tests += 1
        return _representatives_agree(self.ts, self.involution, representatives,
                                      sorted(self.sides[(away, node)]))

    def leaf_phase(self) -> Optional[int]:
        for leaf in range(self.n):
            (neighbor,) = self.shape.neighbors(leaf)
            self.member[(leaf, neighbor)] = True
        for leaf in range(self.n):
            (neighbor,) = self.shape.neighbors(leaf)
            rest = sorted(self.sides[(neighbor, leaf)])
            found = _representatives_agree(self.ts, self.involution, rest, [leaf])
            self.member[(neighbor, leaf)] = found
            if found:
                return leaf
        return None

    def climb_phase(self) -> int:
        waiting = {
            node: sum((other, node) not in self.member for other in self.shape.neighbors(node))
            for node in self.shape.nodes if self.shape.nodes[node]['kind'] != LEAF
        }
        queue = deque(sorted((node for node, count in waiting.items() if count <= 1),
                             key=lambda node: (waiting[node], node)))
        while queue:
            node = queue.popleft()
            pending = [other for other in self.shape.neighbors(node) if (other, node) not in self.member]
            if not pending:
                return node
            (away,) = pending
            if self._branch_union_is_member(node, away):
                self.member[(node, away)] = True
                waiting[away] -= 1
                if waiting[away] == 1:
                    queue.append(away)
            else:
                self.member[(node, away)] = False
                self.member[(away, node)] = True
                return node
        raise StructureError("edge direction ended without a sink")

    def close_toward(self, sink: int) -> None:
        for near, far in nx.bfs_edges(self.shape, sink):
            self.member[(far, near)] = True

    def descend_phase(self, sink: int) -> None:
        toward: Dict[int, int] = {}
        for near, far in nx.bfs_edges(self.shape, sink):
            toward[far] = near
            key = (near, far)
            if near in toward and not self.member[(toward[near], near)]:
                self.member[key] = False
            elif key not in self.member:
                self.member[key] = self.shape.degree(near) == 1 or self._branch_union_is_member(near, far)

    def run(self) -> FrozenSet[Edge]:
        anchor = self.leaf_phase()
        sink = anchor if anchor is not None else self.climb_phase()
        self.close_toward(sink)
        self.descend_phase(sink)
        logger.debug("edges directed from sink %d after %d branch tests", sink, self.tests)
        return frozenset(key for key, is_member in self.member.items() if is_member)


def direct_edges(shape: nx.Graph, ts: TwoStructure, involution: ColorInvolution) -> CrossingFamilyTree:
    """
    Orient the undirected shape in three phases.

    Phase 1 gives every leaf an out arc and stops at the first leaf whose
    complement is a member; that leaf is a sink. Otherwise phase 2 climbs
    from the leaves, testing one representative leaf per in-branch against
    the last undirected side, until it reaches a sink. Phase 3 tests the
    sink's edges for double arcs and follows every double arc outwards.
    """
    n = ts.n
    _check_shape(shape, n)
    involution.check_covers(ts)
    pivot = shape.graph.get('pivot', 0)
    if n == 1:
        return CrossingFamilyTree(shape, n, pivot, frozenset())
    if n == 2:
        return CrossingFamilyTree(shape, n, pivot, frozenset({(0, 1), (1, 0)}))

    tree = CrossingFamilyTree(shape, n, pivot, _EdgeDirector(shape, ts, involution).run())
    if not tree.sink_structure_holds():
        raise StructureError("directed tree does not have a sink subtree")
    for node in tree.internal_nodes():
        tree.union_branches(node)
    return tree


def imd_tree(ts: TwoStructure, involution: Optional[ColorInvolution] = None, pivot: int = 0) -> CrossingFamilyTree:
    involution = default_involution(ts, involution)
    if ts.n < 1:
        raise StructureError("empty structure")
    shape = pivot_shape(ts, involution, pivot)
    return direct_edges(shape, ts, involution)


def enumerate_involution_modules_from_tree(tree: CrossingFamilyTree, cap: int) -> List[VertexSet]:
    projected = tree.projected_family_size()
    if projected > cap:
        raise CapExceededError('involution-module family', cap, projected)
    sides = tree.sides()
    family = {frozenset(range(tree.n))}
    family.update(sides[arc] for arc in tree.arcs)
    for node in tree.internal_nodes():
        branches = [sides[(other, node)] for other in tree.union_branches(node)]
        largest = min(len(branches), tree.shape.degree(node) - 2)
        for size in range(2, largest + 1):
            for chosen in combinations(branches, size):
                family.add(frozenset().union(*chosen))
    return canonical_order(family)
