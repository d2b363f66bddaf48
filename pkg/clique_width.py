import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple, Union as TypingUnion

import numpy as np

from errors import ExpressionError
from switch_cograph import CLIQUE, BinaryIMDT, binary_imdt
from two_structure import Graph, as_graph

logger = logging.getLogger(__name__)

LABELS = (1, 2, 3, 4)


def _check_label(label: int) -> None:
    if label not in LABELS:
        raise ExpressionError(f"label {label} outside 1..4")


@dataclass(frozen=True)
class Create:
    vertex: int
    label: int

    def __post_init__(self):
        _check_label(self.label)
        if self.vertex < 0:
            raise ExpressionError(f"negative vertex id {self.vertex}")


@dataclass(frozen=True)
class Union:
    left: 'CwExpr'
    right: 'CwExpr'


@dataclass(frozen=True)
class Relabel:
    source: int
    target: int
    expr: 'CwExpr'

    def __post_init__(self):
        _check_label(self.source)
        _check_label(self.target)


@dataclass(frozen=True)
class Join:
    first: int
    second: int
    expr: 'CwExpr'

    def __post_init__(self):
        _check_label(self.first)
        _check_label(self.second)
        if self.first == self.second:
            raise ExpressionError(f"join needs two distinct labels, got {self.first} twice")


CwExpr = TypingUnion[Create, Union, Relabel, Join]


def _children(expr: CwExpr) -> List[CwExpr]:
    if isinstance(expr, Create):
        return []
    if isinstance(expr, Union):
        return [expr.left, expr.right]
    return [expr.expr]


def _postorder(expr: CwExpr) -> List[CwExpr]:
    order = []
    stack = [expr]
    while stack:
        current = stack.pop()
        order.append(current)
        stack.extend(_children(current))
    order.reverse()
    return order


class _Labeled:
    """Expression under construction plus the labels it actually uses."""

    def __init__(self, expr: CwExpr, used: FrozenSet[int]):
        self.expr = expr
        self.used = used

    def relabel(self, source: int, target: int) -> '_Labeled':
        if source not in self.used or source == target:
            return self
        if isinstance(self.expr, Create):
            return _Labeled(Create(self.expr.vertex, target), frozenset([target]))
        return _Labeled(Relabel(source, target, self.expr), (self.used - {source}) | {target})

    def join(self, first: int, second: int) -> '_Labeled':
        if first in self.used and second in self.used:
            return _Labeled(Join(first, second, self.expr), self.used)
        return self


def clique_width_expression(g: Graph, tree: Optional[BinaryIMDT] = None) -> CwExpr:
    """
    Four-label expression: every node's N1 ends on label 1 and N2 on label 3.

    Child A moves to labels 1/3 and child B to 2/4 (aligned to the node's
    parts), the pairs are joined by node kind, then 2 and 4 fold back.
    """
    tree = tree if tree is not None else binary_imdt(as_graph(g))
    built: Dict[int, _Labeled] = {}
    for node in tree.postorder():
        if node.is_leaf:
            built[id(node)] = _Labeled(Create(min(node.leaves), 1), frozenset([1]))
            continue
        left = built[id(node.left)]
        if node.flip_left:
            left = left.relabel(1, 4).relabel(3, 1).relabel(4, 3)
        right = built[id(node.right)]
        if node.flip_right:
            right = right.relabel(3, 2).relabel(1, 4)
        else:
            right = right.relabel(1, 2).relabel(3, 4)
        current = _Labeled(Union(left.expr, right.expr), left.used | right.used)
        if node.kind == CLIQUE:
            current = current.join(1, 2).join(3, 4)
        else:
            current = current.join(1, 4).join(3, 2)
        if not node.is_root:
            current = current.relabel(2, 1).relabel(4, 3)
        built[id(node)] = current
    return built[id(tree.root)].expr


def eval_cw_expression(expr: CwExpr, n: Optional[int] = None) -> Graph:
    """
    Underlying graph of an expression; vertices must be created exactly once
    """
    order = _postorder(expr)
    created = [node.vertex for node in order if isinstance(node, Create)]
    if len(set(created)) != len(created):
        seen, duplicate = set(), None
        for v in created:
            if v in seen:
                duplicate = v
                break
            seen.add(v)
        raise ExpressionError(f"vertex {duplicate} created twice")
    size = n if n is not None else (max(created) + 1 if created else 0)
    if created and max(created) >= size:
        raise ExpressionError(f"vertex {max(created)} outside 0..{size - 1}")

    label = np.zeros(size, dtype=np.int8)
    adjacency = np.zeros((size, size), dtype=bool)
    members: Dict[int, np.ndarray] = {}
    for node in order:
        if isinstance(node, Create):
            label[node.vertex] = node.label
            members[id(node)] = np.asarray([node.vertex], dtype=np.intp)
        elif isinstance(node, Union):
            members[id(node)] = np.concatenate([members.pop(id(node.left)), members.pop(id(node.right))])
        elif isinstance(node, Relabel):
            vertices = members.pop(id(node.expr))
            label[vertices[label[vertices] == node.source]] = node.target
            members[id(node)] = vertices
        else:
            vertices = members.pop(id(node.expr))
            first = vertices[label[vertices] == node.first]
            second = vertices[label[vertices] == node.second]
            adjacency[np.ix_(first, second)] = True
            adjacency[np.ix_(second, first)] = True
            members[id(node)] = vertices
    return Graph.from_adjacency(adjacency.astype(np.int32))


def labels_used(expr: CwExpr) -> FrozenSet[int]:
    used = set()
    for node in _postorder(expr):
        if isinstance(node, Create):
            used.add(node.label)
        elif isinstance(node, Relabel):
            used.update((node.source, node.target))
        elif isinstance(node, Join):
            used.update((node.first, node.second))
    return frozenset(used)


def to_sexpr(expr: CwExpr) -> str:
    """
    Render as `(v 0 1)`, `(union A B)`, `(relabel 2 1 A)`, `(join 1 2 A)`
    """
    pieces: List[str] = []
    stack: List[TypingUnion[CwExpr, str]] = [expr]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            pieces.append(item)
        elif isinstance(item, Create):
            pieces.append(f"(v {item.vertex} {item.label})")
        elif isinstance(item, Union):
            pieces.append("(union ")
            stack.extend([")", item.right, " ", item.left])
        elif isinstance(item, Relabel):
            pieces.append(f"(relabel {item.source} {item.target} ")
            stack.extend([")", item.expr])
        else:
            pieces.append(f"(join {item.first} {item.second} ")
            stack.extend([")", item.expr])
    return ''.join(pieces)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_sexpr(text: str) -> CwExpr:
    tokens = _TOKEN.findall(text)
    # each open frame: [head, args]
    frames: List[Tuple[str, list]] = []
    result: Optional[CwExpr] = None
    position = 0
    while position < len(tokens):
        token = tokens[position]
        position += 1
        if token == '(':
            if position >= len(tokens):
                raise ExpressionError("unexpected end of expression")
            frames.append((tokens[position], []))
            position += 1
        elif token == ')':
            if not frames:
                raise ExpressionError("unbalanced ')'")
            head, args = frames.pop()
            node = _build(head, args)
            if frames:
                frames[-1][1].append(node)
            elif result is None:
                result = node
            else:
                raise ExpressionError("trailing expression")
        else:
            if not frames:
                raise ExpressionError(f"stray token {token!r}")
            try:
                frames[-1][1].append(int(token))
            except ValueError:
                raise ExpressionError(f"expected an integer, got {token!r}") from None
    if frames or result is None:
        raise ExpressionError("unbalanced or empty expression")
    return result


_ARITY = {
    'v': (int, int),
    'union': (object, object),
    'relabel': (int, int, object),
    'join': (int, int, object),
}


def _build(head: str, args: list) -> CwExpr:
    shape = _ARITY.get(head)
    if shape is None:
        raise ExpressionError(f"unknown operation {head!r}")
    if len(args) != len(shape) or any(
            (kind is int) != isinstance(arg, int) for kind, arg in zip(shape, args)):
        raise ExpressionError(f"bad arguments for {head}")
    if head == 'v':
        return Create(*args)
    if head == 'union':
        return Union(*args)
    if head == 'relabel':
        return Relabel(*args)
    return Join(*args)
