import logging
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from modular import binary_cotree
from switch_cograph import CLIQUE, BinaryIMDT, ImdtNode, binary_imdt, complement_imdt
from two_structure import Graph, VertexSet, as_graph

logger = logging.getLogger(__name__)

NEG = -np.inf

Triple = Tuple[object, object, object]


def _tree_for(g: Graph, tree: Optional[BinaryIMDT]) -> BinaryIMDT:
    return tree if tree is not None else binary_imdt(as_graph(g))


def _aligned(values: Triple, flip: bool) -> Tuple:
    """(whole, part1, part2) of a child, parts swapped when flipped."""
    whole, first, second = values
    return (whole, second, first) if flip else (whole, first, second)


def _bottom_up(tree: BinaryIMDT, leaf: Callable, combine: Callable) -> Dict[int, Triple]:
    values: Dict[int, Triple] = {}
    for node in tree.postorder():
        if node.is_leaf:
            values[id(node)] = leaf(node)
        else:
            a = _aligned(values[id(node.left)], node.flip_left)
            b = _aligned(values[id(node.right)], node.flip_right)
            values[id(node)] = combine(node, a, b)
    return values


def _clique_combine(node: ImdtNode, a: Triple, b: Triple) -> Triple:
    whole_a, a1, a2 = a
    whole_b, b1, b2 = b
    if node.kind == CLIQUE:
        first, second = a1 + b1, a2 + b2
        return max(first, second, whole_a, whole_b), first, second
    first, second = max(a1, b1), max(a2, b2)
    return max(a1 + b2, a2 + b1, whole_a, whole_b), first, second


def clique_number_of_tree(tree: BinaryIMDT) -> int:
    values = _bottom_up(tree, lambda node: (1, 1, 0), _clique_combine)
    return values[id(tree.root)][0]


def max_clique(g: Graph, tree: Optional[BinaryIMDT] = None) -> int:
    return clique_number_of_tree(_tree_for(g, tree))


def max_independent_set(g: Graph, tree: Optional[BinaryIMDT] = None) -> int:
    """
    Clique number of the complement, read off the complemented tree
    """
    return clique_number_of_tree(complement_imdt(_tree_for(g, tree)))


def chromatic_number(g: Graph, tree: Optional[BinaryIMDT] = None) -> int:
    return max_clique(g, tree)


def clique_cover_number(g: Graph, tree: Optional[BinaryIMDT] = None) -> int:
    return max_independent_set(g, tree)


def _smallest(*options: VertexSet) -> VertexSet:
    return min(options, key=lambda s: (len(s), sorted(s)))


def min_vertex_cover(g: Graph, tree: Optional[BinaryIMDT] = None) -> VertexSet:
    tree = _tree_for(g, tree)
    empty = frozenset()

    def combine(node: ImdtNode, a: Triple, b: Triple) -> Triple:
        cover_a, cover_a1, cover_a2 = a
        cover_b, cover_b1, cover_b2 = b
        a1, a2 = node.left_parts()
        b1, b2 = node.right_parts()
        every_a, every_b = node.left.leaves, node.right.leaves
        if node.kind == CLIQUE:
            first = _smallest(a1 | cover_b1, b1 | cover_a1)
            second = _smallest(a2 | cover_b2, b2 | cover_a2)
            whole = _smallest(
                every_a | cover_b,
                every_b | cover_a,
                a1 | b2 | cover_a2 | cover_b1,
                a2 | b1 | cover_a1 | cover_b2,
            )
        else:
            first = cover_a1 | cover_b1
            second = cover_a2 | cover_b2
            whole = _smallest(
                every_a | cover_b,
                every_b | cover_a,
                a1 | b1 | cover_a2 | cover_b2,
                a2 | b2 | cover_a1 | cover_b1,
            )
        return whole, first, second

    values = _bottom_up(tree, lambda node: (empty, empty, empty), combine)
    return values[id(tree.root)][0]


class _CutTable:
    """
    table[i, j]: best crossing count with i vertices of part1 and j of part2
    on the X side; pick_* hold the left child's (i, j) behind each entry.
    """

    def __init__(self, table: np.ndarray, pick_first=None, pick_second=None):
        self.table = table
        self.pick_first = pick_first
        self.pick_second = pick_second


def _cut_combine(node: ImdtNode, left: np.ndarray, right: np.ndarray) -> _CutTable:
    a1_size, a2_size = left.shape[0] - 1, left.shape[1] - 1
    b1_size, b2_size = right.shape[0] - 1, right.shape[1] - 1
    table = np.full((a1_size + b1_size + 1, a2_size + b2_size + 1), NEG)
    pick_first = np.full(table.shape, -1, dtype=np.int64)
    pick_second = np.full(table.shape, -1, dtype=np.int64)
    k, r = np.meshgrid(np.arange(b1_size + 1), np.arange(b2_size + 1), indexing='ij')

    for l in range(a1_size + 1):
        for q in range(a2_size + 1):
            base = left[l, q]
            if base == NEG:
                continue
            if node.kind == CLIQUE:
                cross = l * (b1_size - k) + k * (a1_size - l) + q * (b2_size - r) + r * (a2_size - q)
            else:
                cross = l * (b2_size - r) + r * (a1_size - l) + q * (b1_size - k) + k * (a2_size - q)
            candidate = base + right + cross
            window = table[l:l + b1_size + 1, q:q + b2_size + 1]
            better = candidate > window
            window[better] = candidate[better]
            pick_first[l:l + b1_size + 1, q:q + b2_size + 1][better] = l
            pick_second[l:l + b1_size + 1, q:q + b2_size + 1][better] = q
    return _CutTable(table, pick_first, pick_second)


def _oriented(table: np.ndarray, flip: bool) -> np.ndarray:
    return table.T if flip else table


def max_cut_tables(tree: BinaryIMDT) -> Dict[int, _CutTable]:
    """
    Cut table of every node, keyed by id(node), rows indexed by part1
    """
    tables: Dict[int, _CutTable] = {}
    for node in tree.postorder():
        if node.is_leaf:
            tables[id(node)] = _CutTable(np.zeros((2, 1)))
            continue
        left = _oriented(tables[id(node.left)].table, node.flip_left)
        right = _oriented(tables[id(node.right)].table, node.flip_right)
        tables[id(node)] = _cut_combine(node, left, right)
    return tables


def max_cut(g: Graph, tree: Optional[BinaryIMDT] = None) -> Tuple[int, VertexSet]:
    """
    Maximum number of edges between X and its complement, with one such X
    """
    tree = _tree_for(g, tree)
    tables = max_cut_tables(tree)
    root_table = tables[id(tree.root)].table
    i, j = np.unravel_index(int(np.argmax(root_table)), root_table.shape)
    value = int(root_table[i, j])
    logger.debug("max cut root table %s, value %d", root_table.shape, value)

    chosen = set()
    stack = [(tree.root, int(i), int(j))]
    while stack:
        node, i, j = stack.pop()
        if node.is_leaf:
            if i:
                chosen.update(node.leaves)
            continue
        entry = tables[id(node)]
        l, q = int(entry.pick_first[i, j]), int(entry.pick_second[i, j])
        k, r = i - l, j - q
        stack.append((node.left, *((q, l) if node.flip_left else (l, q))))
        stack.append((node.right, *((r, k) if node.flip_right else (k, r))))
    return value, frozenset(chosen)


def _joinable(first: Tuple[int, int], first_size: int, second: Tuple[int, int], second_size: int) -> bool:
    """
    No vertex only in bag X on one side meets a vertex only in bag Y on the other
    """
    x1, y1 = first
    x2, y2 = second
    return not ((y1 < first_size and x2 < second_size) or (x1 < first_size and y2 < second_size))


def _balanced(states) -> Tuple:
    return min(states, key=lambda state: (max(state[0], state[1]), state))


def _leaf_states():
    return {(1, 0): None, (0, 1): None, (1, 1): None}


def vertex_separator_cograph(g: Graph) -> Tuple[VertexSet, VertexSet]:
    """
    Two bags covering every vertex and every edge, the larger bag as small as
    possible, over the cotree.
    """
    g = as_graph(g)
    root = binary_cotree(g)

    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(node.children)
    order.reverse()

    states: Dict[int, Dict[Tuple[int, int], Optional[Tuple]]] = {}
    for node in order:
        if node.is_leaf:
            states[id(node)] = _leaf_states()
            continue
        left, right = states[id(node.left)], states[id(node.right)]
        left_size, right_size = len(node.left.leaves), len(node.right.leaves)
        merged: Dict[Tuple[int, int], Tuple] = {}
        for a in sorted(left):
            for b in sorted(right):
                if node.kind == 'series' and not _joinable(a, left_size, b, right_size):
                    continue
                key = (a[0] + b[0], a[1] + b[1])
                if key not in merged:
                    merged[key] = (a, b)
        states[id(node)] = merged

    best = _balanced(states[id(root)])
    first, second = set(), set()
    stack = [(root, best)]
    while stack:
        node, state = stack.pop()
        if node.is_leaf:
            if state[0]:
                first.update(node.leaves)
            if state[1]:
                second.update(node.leaves)
            continue
        a, b = states[id(node)][state]
        stack.append((node.left, a))
        stack.append((node.right, b))
    return frozenset(first), frozenset(second)


def _flip_state(state: Tuple[int, int, int, int], flip: bool) -> Tuple[int, int, int, int]:
    x1, y1, x2, y2 = state
    return (x2, y2, x1, y1) if flip else state


def vertex_separator(g: Graph, tree: Optional[BinaryIMDT] = None) -> Tuple[VertexSet, VertexSet]:
    """
    Same problem over the binary IMDT.

    A state counts (|X ∩ N1|, |Y ∩ N1|, |X ∩ N2|, |Y ∩ N2|); two completely
    joined parts P, Q are compatible unless an X-only vertex of one meets a
    Y-only vertex of the other.
    """
    tree = _tree_for(g, tree)
    states: Dict[int, Dict[Tuple, Optional[Tuple]]] = {}
    for node in tree.postorder():
        if node.is_leaf:
            states[id(node)] = {(1, 0, 0, 0): None, (0, 1, 0, 0): None, (1, 1, 0, 0): None}
            continue
        a1, a2 = node.left_parts()
        b1, b2 = node.right_parts()
        if node.kind == CLIQUE:
            joined = ((0, len(a1), 0, len(b1)), (1, len(a2), 1, len(b2)))
        else:
            joined = ((0, len(a1), 1, len(b2)), (1, len(a2), 0, len(b1)))
        left = {_flip_state(state, node.flip_left): state for state in states[id(node.left)]}
        right = {_flip_state(state, node.flip_right): state for state in states[id(node.right)]}
        merged: Dict[Tuple, Tuple] = {}
        for a in sorted(left):
            for b in sorted(right):
                ok = all(
                    _joinable(a[2 * p:2 * p + 2], p_size, b[2 * q:2 * q + 2], q_size)
                    for p, p_size, q, q_size in joined
                )
                if not ok:
                    continue
                key = (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])
                if key not in merged:
                    merged[key] = (left[a], right[b])
        states[id(node)] = merged
        logger.debug("separator node over %d vertices: %d states", len(node.leaves), len(merged))

    best = min(states[id(tree.root)], key=lambda s: (max(s[0] + s[2], s[1] + s[3]), s))
    first, second = set(), set()
    stack = [(tree.root, best)]
    while stack:
        node, state = stack.pop()
        if node.is_leaf:
            if state[0]:
                first.update(node.leaves)
            if state[1]:
                second.update(node.leaves)
            continue
        a, b = states[id(node)][state]
        stack.append((node.left, a))
        stack.append((node.right, b))
    return frozenset(first), frozenset(second)


def separator_value(bags: Tuple[VertexSet, VertexSet]) -> int:
    return max(len(bags[0]), len(bags[1]))


def cut_size(g: Graph, side: VertexSet) -> int:
    g = as_graph(g)
    mask = np.zeros(g.n, dtype=bool)
    mask[list(side)] = True
    return int(g.adjacency[np.ix_(mask, ~mask)].sum())


def covers_all_edges(g: Graph, cover: VertexSet) -> bool:
    return all(u in cover or v in cover for u, v in as_graph(g).edges())


def separates(g: Graph, bags: Tuple[VertexSet, VertexSet]) -> bool:
    first, second = bags
    g = as_graph(g)
    if first | second != frozenset(range(g.n)):
        return False
    return all((u in first and v in first) or (u in second and v in second) for u, v in g.edges())

