import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from errors import CapExceededError
from modular import is_module
from two_structure import ColorInvolution, Graph, TwoStructure, VertexSet, as_graph, canonical_order, induced

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClosureViolation:
    operation: str
    first: VertexSet
    second: VertexSet
    result: VertexSet


@dataclass
class FamilyReport:
    family: List[VertexSet]
    violations: List[ClosureViolation] = field(default_factory=list)

    @property
    def closed(self) -> bool:
        return not self.violations


def is_umodule(ts: TwoStructure, members) -> bool:
    """
    Every member splits the outside into the same color classes
    """
    module = frozenset(members)
    if len(module) <= 1 or len(module) == ts.n:
        return True
    inside = np.asarray(sorted(module), dtype=np.intp)
    outside = np.asarray([v for v in range(ts.n) if v not in module], dtype=np.intp)
    rows = ts.colors[np.ix_(inside, outside)]
    shapes = []
    for row in rows:
        _, first_seen, inverse = np.unique(row, return_index=True, return_inverse=True)
        rank = np.argsort(np.argsort(first_seen))
        shapes.append(rank[inverse])
    reference = shapes[0]
    return all(np.array_equal(reference, other) for other in shapes[1:])


def is_involution_module_by_pairs(ts: TwoStructure, involution: ColorInvolution, members) -> bool:
    """
    Any two members see every outside vertex in the same colors, or every
    one of them in mutually involuted colors.
    """
    module = frozenset(members)
    outside = [x for x in range(ts.n) if x not in module]
    for u, v in combinations(sorted(module), 2):
        same = all(ts.color(u, x) == ts.color(v, x) for x in outside)
        flipped = all(ts.color(u, x) == involution(ts.color(v, x)) for x in outside)
        if not (same or flipped):
            return False
    return True


def _crossing(a: VertexSet, b: VertexSet, everything: VertexSet) -> bool:
    return bool(a & b) and not a <= b and not b <= a and (a | b) != everything


def closure_check(family: Sequence[VertexSet], n: int) -> FamilyReport:
    members = canonical_order(family)
    present = set(members)
    everything = frozenset(range(n))
    violations = []
    for index, a in enumerate(members):
        for b in members[index + 1:]:
            if not _crossing(a, b, everything):
                continue
            results = (
                ('union', a | b),
                ('intersection', a & b),
                ('difference', a - b),
                ('difference', b - a),
                ('symmetric difference', a ^ b),
            )
            for operation, result in results:
                if result not in present:
                    violations.append(ClosureViolation(operation, a, b, result))
    return FamilyReport(members, violations)


def _subset_matrix(n: int) -> np.ndarray:
    """Row m is the membership vector of the subset with bitmask m."""
    codes = np.arange(2 ** n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(bool)


def _first_best(values: np.ndarray, valid: np.ndarray, maximize: bool) -> int:
    masked = np.where(valid, values, -np.inf if maximize else np.inf)
    return int(np.argmax(masked) if maximize else np.argmin(masked))


class BruteForceOracle:
    """
    Exhaustive ground truth for module families and optimisation problems
    """

    def __init__(self, caps: Optional[Dict[str, int]] = None):
        self.caps = self._initialize_caps()
        if caps:
            self.caps.update(caps)

    def _initialize_caps(self):
        """
        Largest vertex count each search accepts
        """
        return {
            'families': 16,
            'clique': 16,
            'mis': 16,
            'vertex-cover': 16,
            'max-cut': 18,
            'chromatic': 10,
            'clique-cover': 10,
            'separator': 12,
        }

    def _guard(self, what: str, n: int) -> None:
        cap = self.caps[what]
        if n > cap:
            raise CapExceededError(f"brute-force {what} on {n} vertices", cap, n)

    def _family(self, ts: TwoStructure, test: Callable[[VertexSet], bool]) -> List[VertexSet]:
        self._guard('families', ts.n)
        found = []
        for mask in range(1, 2 ** ts.n):
            members = frozenset(v for v in range(ts.n) if mask >> v & 1)
            if test(members):
                found.append(members)
        return canonical_order(found)

    def brute_modules(self, ts: TwoStructure) -> List[VertexSet]:
        return self._family(ts, lambda members: is_module(ts, members))

    def brute_umodules(self, ts: TwoStructure) -> List[VertexSet]:
        return self._family(ts, lambda members: is_umodule(ts, members))

    def brute_involution_modules(self, ts: TwoStructure, involution: ColorInvolution) -> List[VertexSet]:
        involution.check_covers(ts)
        return self._family(ts, lambda members: is_involution_module_by_pairs(ts, involution, members))

    def _inner_pair_counts(self, g: Graph, what: str, adjacent: bool):
        g = as_graph(g)
        self._guard(what, g.n)
        subsets = _subset_matrix(g.n)
        pairs = g.adjacency if adjacent else ~g.adjacency & ~np.eye(g.n, dtype=bool)
        weights = subsets.astype(np.int32)
        inner = ((weights @ pairs.astype(np.int32)) * weights).sum(axis=1)
        return subsets, inner

    def brute_max_clique(self, g: Graph) -> Tuple[int, VertexSet]:
        subsets, missing = self._inner_pair_counts(g, 'clique', adjacent=False)
        sizes = subsets.sum(axis=1)
        best = _first_best(sizes, missing == 0, maximize=True)
        return int(sizes[best]), frozenset(np.flatnonzero(subsets[best]).tolist())

    def brute_mis(self, g: Graph) -> Tuple[int, VertexSet]:
        subsets, present = self._inner_pair_counts(g, 'mis', adjacent=True)
        sizes = subsets.sum(axis=1)
        best = _first_best(sizes, present == 0, maximize=True)
        return int(sizes[best]), frozenset(np.flatnonzero(subsets[best]).tolist())

    def brute_vc(self, g: Graph) -> Tuple[int, VertexSet]:
        g = as_graph(g)
        self._guard('vertex-cover', g.n)
        subsets = _subset_matrix(g.n)
        outside = (~subsets).astype(np.int32)
        uncovered = ((outside @ g.adjacency.astype(np.int32)) * outside).sum(axis=1)
        sizes = subsets.sum(axis=1)
        best = _first_best(sizes, uncovered == 0, maximize=False)
        return int(sizes[best]), frozenset(np.flatnonzero(subsets[best]).tolist())

    def brute_max_cut(self, g: Graph) -> Tuple[int, VertexSet]:
        g = as_graph(g)
        self._guard('max-cut', g.n)
        subsets = _subset_matrix(g.n)
        side = subsets.astype(np.int32)
        crossing = ((side @ g.adjacency.astype(np.int32)) * (1 - side)).sum(axis=1)
        best = int(np.argmax(crossing))
        return int(crossing[best]), frozenset(np.flatnonzero(subsets[best]).tolist())

    def _colorable(self, adjacency: np.ndarray, k: int) -> bool:
        n = adjacency.shape[0]
        colors = [-1] * n
        colors[0] = 0
        stack = [(1, 0)]
        # iterative backtracking; vertex 0 is pinned to the first color
        while stack:
            v, c = stack.pop()
            if v == n:
                return True
            if c >= k:
                colors[v] = -1
                continue
            stack.append((v, c + 1))
            if all(colors[u] != c for u in range(v) if adjacency[v, u]):
                colors[v] = c
                stack.append((v + 1, 0))
        return False

    def brute_chromatic(self, g: Graph) -> int:
        g = as_graph(g)
        self._guard('chromatic', g.n)
        if g.n == 0:
            return 0
        adjacency = g.adjacency
        for k in range(1, g.n + 1):
            if self._colorable(adjacency, k):
                return k
        return g.n

    def brute_clique_cover(self, g: Graph) -> int:
        g = as_graph(g)
        self._guard('clique-cover', g.n)
        if g.n == 0:
            return 0
        complement = ~g.adjacency & ~np.eye(g.n, dtype=bool)
        for k in range(1, g.n + 1):
            if self._colorable(complement, k):
                return k
        return g.n

    def brute_vertex_separator(self, g: Graph) -> Tuple[int, Tuple[VertexSet, VertexSet]]:
        """
        Every assignment of each vertex to X1 only, X2 only or both
        """
        g = as_graph(g)
        self._guard('separator', g.n)
        n = g.n
        codes = np.arange(3 ** n, dtype=np.int64)
        assignment = (codes[:, None] // (3 ** np.arange(n, dtype=np.int64))) % 3
        first = assignment != 1
        second = assignment != 0
        edges = np.asarray(g.edges(), dtype=np.intp).reshape(-1, 2)
        if len(edges):
            u, v = edges[:, 0], edges[:, 1]
            valid = ((first[:, u] & first[:, v]) | (second[:, u] & second[:, v])).all(axis=1)
        else:
            valid = np.ones(len(codes), dtype=bool)
        value = np.maximum(first.sum(axis=1), second.sum(axis=1))
        best = _first_best(value, valid, maximize=False)
        bags = (frozenset(np.flatnonzero(first[best]).tolist()), frozenset(np.flatnonzero(second[best]).tolist()))
        return int(value[best]), bags

    def perfection_violations(self, g: Graph, samples: int = 50, max_size: int = 8,
                              seed: Optional[int] = None) -> List[Tuple[Tuple[int, ...], int, int]]:
        """
        Sampled induced subgraphs whose chromatic number differs from their clique number
        """
        g = as_graph(g)
        rng = np.random.default_rng(seed)
        limit = min(max_size, g.n, self.caps['chromatic'])
        found = []
        for _ in range(samples):
            if limit == 0:
                break
            size = int(rng.integers(1, limit + 1))
            subset = sorted(rng.choice(g.n, size=size, replace=False).tolist())
            sub, order = induced(g, subset)
            chi = self.brute_chromatic(sub)
            omega, _ = self.brute_max_clique(sub)
            if chi != omega:
                found.append((order, chi, omega))
        return found


def random_two_structure(rng: np.random.Generator, n: int, num_colors: int) -> TwoStructure:
    upper = np.triu(rng.integers(0, num_colors, size=(n, n)), k=1)
    return TwoStructure(upper + upper.T, num_colors)


def search_umodule_intersection_violation(samples: int = 20000, seed: Optional[int] = None, n: int = 5,
                                          num_colors: int = 3,
                                          oracle: Optional[BruteForceOracle] = None):
    """
    Draw random structures until two crossing umodules meet in a non-umodule.

    Returns (structure, report) for the first hit, or None.
    """
    oracle = oracle or BruteForceOracle()
    rng = np.random.default_rng(seed)
    for attempt in range(samples):
        ts = random_two_structure(rng, n, num_colors)
        report = closure_check(oracle.brute_umodules(ts), n)
        hits = [v for v in report.violations if v.operation == 'intersection']
        if hits:
            logger.debug("umodule intersection violation after %d samples", attempt + 1)
            return ts, FamilyReport(report.family, hits)
    logger.warning("no umodule intersection violation in %d samples", samples)
    return None
