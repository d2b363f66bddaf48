import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from errors import StructureError
from two_structure import ColorInvolution, Graph, TwoStructure

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


class ExtendedColorTable:
    """
    Interning table for the Switch-Colors operator.

    The first two arguments are the pivot colors of the two endpoints, so a
    triple and its swap (b, a, e) always map to the same color. When e is
    one of the two pivot colors or its image, the result is the other pivot
    color (or its image). Every remaining triple orbit under
    {id, flip(1,2), flip(2,3), flip(1,3)} and the swap gets a fresh id,
    allocated in first-use order from num_colors upwards.
    """

    def __init__(self, involution: ColorInvolution, num_colors: int):
        involution_size = involution.num_colors
        if num_colors > involution_size:
            raise StructureError(f"involution covers {involution_size} colors, table needs {num_colors}")
        self.involution = involution
        self.num_colors = num_colors
        self._fresh: Dict[Triple, int] = {}
        self._order: List[Triple] = []

    def orbit(self, a: int, b: int, e: int) -> Tuple[Triple, ...]:
        inv = self.involution
        flips = (
            (a, b, e),
            (inv(a), inv(b), e),
            (a, inv(b), inv(e)),
            (inv(a), b, inv(e)),
        )
        return flips + tuple((y, x, z) for x, y, z in flips)

    def canonical(self, a: int, b: int, e: int) -> Triple:
        return min(self.orbit(a, b, e))

    def _check(self, *colors: int) -> None:
        for c in colors:
            if not 0 <= c < self.num_colors:
                raise StructureError(f"color {c} out of range 0..{self.num_colors - 1}")

    def switch_colors(self, a: int, b: int, e: int) -> int:
        self._check(a, b, e)
        inv = self.involution
        if e == a:
            return b
        if e == inv(a):
            return inv(b)
        if e == b:
            return a
        if e == inv(b):
            return inv(a)
        key = self.canonical(a, b, e)
        if key not in self._fresh:
            self._fresh[key] = self.num_colors + len(self._order)
            self._order.append(key)
        return self._fresh[key]

    @property
    def fresh_count(self) -> int:
        return len(self._order)

    @property
    def total_colors(self) -> int:
        return self.num_colors + len(self._order)

    def fresh_orbits(self) -> List[Triple]:
        return list(self._order)


def switch_colors(a: int, b: int, e: int, involution: ColorInvolution, table: ExtendedColorTable) -> int:
    if table.involution != involution:
        raise StructureError("table was built for a different involution")
    return table.switch_colors(a, b, e)


@dataclass(frozen=True)
class PivotSwitchResult:
    structure: TwoStructure
    table: ExtendedColorTable
    pivot: int
    # new vertex i of the switched structure is original vertex kept[i]
    kept: Tuple[int, ...]


def switch_at_pivot(ts: TwoStructure, involution: ColorInvolution, pivot: int) -> PivotSwitchResult:
    """
    Pivot switch: E'(u,v) = switch_colors(E(s,u), E(s,v), E(u,v)) on X minus s
    """
    if ts.n < 2:
        raise StructureError("nothing to switch")
    if not 0 <= pivot < ts.n:
        raise StructureError(f"pivot {pivot} is not a vertex")
    involution.check_covers(ts)

    kept = tuple(v for v in range(ts.n) if v != pivot)
    index = np.asarray(kept, dtype=np.intp)
    table = ExtendedColorTable(involution, involution.num_colors)
    inv = involution.table

    edges = ts.colors[np.ix_(index, index)]
    to_pivot = ts.colors[pivot, index]
    a = to_pivot[:, None]
    b = to_pivot[None, :]
    switched = np.select(
        [edges == a, edges == inv[a], edges == b, edges == inv[b]],
        [np.broadcast_to(b, edges.shape), np.broadcast_to(inv[b], edges.shape),
         np.broadcast_to(a, edges.shape), np.broadcast_to(inv[a], edges.shape)],
        default=-1,
    ).astype(np.int32)
    np.fill_diagonal(switched, 0)

    # symmetric by construction; fresh colors are interned in row-major order
    rows, cols = np.nonzero(np.triu(switched == -1, k=1))
    for u, v in zip(rows.tolist(), cols.tolist()):
        color = table.switch_colors(int(to_pivot[u]), int(to_pivot[v]), int(edges[u, v]))
        switched[u, v] = color
        switched[v, u] = color

    logger.debug("pivot %d switch: %d fresh colors", pivot, table.fresh_count)
    if isinstance(ts, Graph):
        structure: TwoStructure = Graph(switched)
    else:
        structure = TwoStructure(switched, table.total_colors)
    return PivotSwitchResult(structure=structure, table=table, pivot=pivot, kept=kept)


def seidel_switch(g: Graph, v: int) -> Graph:
    """
    Complement edges between N(v) and its non-neighbors, then delete v
    """
    if g.n < 2:
        raise StructureError("nothing to switch")
    if not 0 <= v < g.n:
        raise StructureError(f"vertex {v} is not in the graph")
    adjacency = g.adjacency
    neighbor = adjacency[v]
    toggled = adjacency ^ (neighbor[:, None] ^ neighbor[None, :])
    keep = np.array([u for u in range(g.n) if u != v], dtype=np.intp)
    return Graph.from_adjacency(toggled[np.ix_(keep, keep)].astype(np.int32))
