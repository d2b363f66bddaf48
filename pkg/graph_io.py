import datetime
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from errors import DecompositionError, ParseError
from two_structure import ColorInvolution, Graph, TwoStructure

logger = logging.getLogger(__name__)


class _Draft:
    """Parsed pieces of one file before the structure is built."""

    def __init__(self):
        self.kind: Optional[str] = None
        self.n = 0
        self.num_colors = 2
        self.pairs: Dict[Tuple[int, int], int] = {}
        self.involution: List[Tuple[int, int]] = []
        self.errors: List[Tuple[int, str]] = []
        self.warnings: List[Tuple[int, str]] = []

    def error(self, line: int, message: str) -> None:
        self.errors.append((line, message))

    def warn(self, line: int, message: str) -> None:
        self.warnings.append((line, message))


class GraphFileValidator:
    """
    Validation of the graph and 2-structure text formats
    """

    def __init__(self):
        self.format_rules = self._initialize_format_rules()
        self.validation_history = []

    def _initialize_format_rules(self):
        """
        Headers, arities and value ranges of the accepted formats
        """
        return {
            'graph': {
                'header_arity': 1,
                'row_arity': 2,
                'involution_lines': False,
                'default_color': 0,
                'description': 'graph <n> followed by one "<u> <v>" edge per line',
            },
            '2struct': {
                'header_arity': 2,
                'row_arity': 3,
                'involution_lines': True,
                'default_color': 0,
                'description': '2struct <n> <c>, "inv <a> <b>" pairs, then "<u> <v> <color>" with u < v',
            },
            'comment_prefix': '#',
            'involution_keyword': 'inv',
            'max_vertices': 100000,
            'history_limit': 100,
        }

    def _integers(self, draft: _Draft, number: int, tokens: List[str]) -> Optional[List[int]]:
        try:
            return [int(token) for token in tokens]
        except ValueError:
            draft.error(number, f"expected integers, got {' '.join(tokens)!r}")
            return None

    def _read_header(self, draft: _Draft, number: int, tokens: List[str]) -> None:
        kind = tokens[0]
        if kind not in ('graph', '2struct'):
            draft.error(number, f"unknown header {kind!r} (expected 'graph' or '2struct')")
            return
        rules = self.format_rules[kind]
        if len(tokens) - 1 != rules['header_arity']:
            draft.error(number, f"'{kind}' header takes {rules['header_arity']} number(s)")
            return
        values = self._integers(draft, number, tokens[1:])
        if values is None:
            return
        n = values[0]
        if n < 1 or n > self.format_rules['max_vertices']:
            draft.error(number, f"vertex count {n} outside 1..{self.format_rules['max_vertices']}")
            return
        draft.kind = kind
        draft.n = n
        if kind == '2struct':
            if values[1] < 2:
                draft.error(number, f"color count {values[1]} must be at least 2")
                return
            draft.num_colors = values[1]

    def _read_involution(self, draft: _Draft, number: int, tokens: List[str]) -> None:
        if not self.format_rules[draft.kind]['involution_lines']:
            draft.error(number, "involution lines are only allowed in 2struct files")
            return
        if len(tokens) != 3:
            draft.error(number, "involution line takes two colors")
            return
        values = self._integers(draft, number, tokens[1:])
        if values is None:
            return
        a, b = values
        for color in (a, b):
            if not 0 <= color < draft.num_colors:
                draft.error(number, f"involution color {color} outside 0..{draft.num_colors - 1}")
                return
        if a == b:
            draft.error(number, f"color {a} cannot be its own partner")
            return
        used = {c for pair in draft.involution for c in pair}
        if a in used or b in used:
            draft.error(number, f"colors {a} and {b} must not already be paired")
            return
        draft.involution.append((a, b))

    def _read_pair(self, draft: _Draft, number: int, tokens: List[str]) -> None:
        rules = self.format_rules[draft.kind]
        if len(tokens) != rules['row_arity']:
            draft.error(number, f"expected {rules['row_arity']} numbers per line")
            return
        values = self._integers(draft, number, tokens)
        if values is None:
            return
        u, v = values[0], values[1]
        color = values[2] if draft.kind == '2struct' else 1
        if not (0 <= u < draft.n and 0 <= v < draft.n):
            draft.error(number, f"vertex outside 0..{draft.n - 1}")
            return
        if u == v:
            draft.error(number, f"self-pair at vertex {u}")
            return
        if draft.kind == '2struct':
            if u > v:
                draft.error(number, f"pair ({u}, {v}) must be written with u < v")
                return
            if not 0 <= color < draft.num_colors:
                draft.error(number, f"color {color} outside 0..{draft.num_colors - 1}")
                return
        key = (min(u, v), max(u, v))
        if key in draft.pairs:
            draft.error(number, f"duplicate pair {key[0]} {key[1]}")
            return
        draft.pairs[key] = color

    def _scan(self, text: str) -> _Draft:
        draft = _Draft()
        prefix = self.format_rules['comment_prefix']
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split(prefix, 1)[0].strip()
            if not content:
                continue
            tokens = content.split()
            if draft.kind is None:
                if draft.errors:
                    break
                self._read_header(draft, number, tokens)
                continue
            if tokens[0] == self.format_rules['involution_keyword']:
                self._read_involution(draft, number, tokens)
            else:
                self._read_pair(draft, number, tokens)
        if draft.kind is None and not draft.errors:
            draft.error(1, "missing header line")
        if draft.kind == '2struct' and not draft.errors:
            covered = {c for pair in draft.involution for c in pair}
            missing = sorted(set(range(draft.num_colors)) - covered)
            if missing:
                draft.error(len(text.splitlines()) or 1, f"colors {missing} have no involution partner")
        if draft.kind == 'graph' and not draft.errors and not draft.pairs:
            draft.warn(1, "graph has no edges")
        return draft

    def validate_text(self, text: str) -> Dict[str, Any]:
        """
        Check a file without raising; every problem is reported with its line
        """
        draft = self._scan(text)
        report = {
            'valid': not draft.errors,
            'errors': [f"line {line}: {message}" for line, message in draft.errors],
            'warnings': [f"line {line}: {message}" for line, message in draft.warnings],
            'timestamp': datetime.datetime.now(),
            'summary': {
                'format': draft.kind,
                'vertices': draft.n,
                'colors': draft.num_colors,
                'listed_pairs': len(draft.pairs),
            },
        }
        self.validation_history.append({'timestamp': report['timestamp'], 'result': report})
        limit = self.format_rules['history_limit']
        if len(self.validation_history) > limit:
            self.validation_history = self.validation_history[-limit:]
        return report

    def parse(self, text: str) -> Tuple[TwoStructure, ColorInvolution]:
        draft = self._scan(text)
        if draft.errors:
            line, message = draft.errors[0]
            raise ParseError(message, line)
        rules = self.format_rules[draft.kind]
        matrix = np.full((draft.n, draft.n), rules['default_color'], dtype=np.int32)
        for (u, v), color in draft.pairs.items():
            matrix[u, v] = color
            matrix[v, u] = color
        try:
            if draft.kind == 'graph':
                return Graph(matrix), ColorInvolution.for_graphs()
            involution = ColorInvolution.from_pairs(draft.num_colors, draft.involution)
            return TwoStructure(matrix, draft.num_colors), involution
        except DecompositionError as exc:
            raise ParseError(exc.message, 1) from exc

    def get_validation_summary(self) -> Dict[str, Any]:
        return {
            'supported_formats': [key for key in ('graph', '2struct') if key in self.format_rules],
            'validation_history_count': len(self.validation_history),
            'valid_count': sum(1 for entry in self.validation_history if entry['result']['valid']),
        }

    def clear_validation_history(self):
        self.validation_history = []


def parse_structure_text(text: str) -> Tuple[TwoStructure, ColorInvolution]:
    return GraphFileValidator().parse(text)


def parse_graph_text(text: str) -> Graph:
    ts, _ = parse_structure_text(text)
    if not isinstance(ts, Graph):
        raise ParseError("expected a 'graph' file", 1)
    return ts


def parse_two_structure_text(text: str) -> Tuple[TwoStructure, ColorInvolution]:
    return parse_structure_text(text)


def read_structure(path: str) -> Tuple[TwoStructure, ColorInvolution]:
    text = Path(path).read_text()
    logger.debug("read %d bytes from %s", len(text), path)
    return parse_structure_text(text)


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return '\n'.join(lines) + '\n'


def format_two_structure(ts: TwoStructure, involution: ColorInvolution) -> str:
    lines = [f"2struct {ts.n} {involution.num_colors}"]
    lines.extend(f"inv {a} {involution(a)}" for a in range(involution.num_colors) if a < involution(a))
    rows, cols = np.nonzero(np.triu(ts.colors != 0, k=1))
    lines.extend(f"{u} {v} {ts.colors[u, v]}" for u, v in zip(rows.tolist(), cols.tolist()))
    return '\n'.join(lines) + '\n'
