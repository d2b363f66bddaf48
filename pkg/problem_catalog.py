import logging
from typing import Any, Dict, List, Optional

import pandas as pd

from errors import DecompositionError
from modular import is_cograph
from oracles import BruteForceOracle
from solvers import (chromatic_number, clique_cover_number, max_clique, max_cut, max_independent_set,
                     min_vertex_cover, vertex_separator, vertex_separator_cograph)
from switch_cograph import BinaryIMDT, binary_imdt
from two_structure import Graph, as_graph

logger = logging.getLogger(__name__)

SWITCH_COGRAPH = 'switch cograph'
COGRAPH = 'cograph'


class ProblemCatalog:
    """
    Registry of the optimisation problems solved over decomposition trees
    """

    def __init__(self):
        self.problems = self._initialize_problems()
        self.witness_formats = self._initialize_witness_formats()

    def _initialize_problems(self):
        """
        Solver, brute-force counterpart and required input class per problem
        """
        return {
            'clique': {
                'description': 'Maximum clique size',
                'solver': max_clique,
                'oracle': 'brute_max_clique',
                'cap': 'clique',
                'witness': False,
                'input_class': SWITCH_COGRAPH,
            },
            'mis': {
                'description': 'Maximum independent set size',
                'solver': max_independent_set,
                'oracle': 'brute_mis',
                'cap': 'mis',
                'witness': False,
                'input_class': SWITCH_COGRAPH,
            },
            'chromatic': {
                'description': 'Chromatic number',
                'solver': chromatic_number,
                'oracle': 'brute_chromatic',
                'cap': 'chromatic',
                'witness': False,
                'input_class': SWITCH_COGRAPH,
            },
            'clique-cover': {
                'description': 'Minimum number of cliques covering the vertices',
                'solver': clique_cover_number,
                'oracle': 'brute_clique_cover',
                'cap': 'clique-cover',
                'witness': False,
                'input_class': SWITCH_COGRAPH,
            },
            'vertex-cover': {
                'description': 'Minimum vertex cover',
                'solver': min_vertex_cover,
                'oracle': 'brute_vc',
                'cap': 'vertex-cover',
                'witness': True,
                'input_class': SWITCH_COGRAPH,
            },
            'max-cut': {
                'description': 'Maximum cut',
                'solver': max_cut,
                'oracle': 'brute_max_cut',
                'cap': 'max-cut',
                'witness': True,
                'input_class': SWITCH_COGRAPH,
            },
            'separator': {
                'description': 'Two-bag vertex separator minimising the larger bag',
                'solver': vertex_separator,
                'oracle': 'brute_vertex_separator',
                'cap': 'separator',
                'witness': True,
                'input_class': SWITCH_COGRAPH,
            },
            'separator-cograph': {
                'description': 'Vertex separator over the cotree',
                'solver': vertex_separator_cograph,
                'oracle': 'brute_vertex_separator',
                'cap': 'separator',
                'witness': True,
                'input_class': COGRAPH,
            },
        }

    def _initialize_witness_formats(self):
        """
        How each solver's raw output splits into a value and a witness
        """
        return {
            'vertex-cover': lambda raw: (len(raw), [sorted(raw)]),
            'max-cut': lambda raw: (raw[0], [sorted(raw[1])]),
            'separator': lambda raw: (max(len(raw[0]), len(raw[1])), [sorted(raw[0]), sorted(raw[1])]),
            'separator-cograph': lambda raw: (max(len(raw[0]), len(raw[1])), [sorted(raw[0]), sorted(raw[1])]),
        }

    def names(self, input_class: Optional[str] = None) -> List[str]:
        return [name for name, entry in self.problems.items()
                if input_class is None or entry['input_class'] == input_class]

    def get_problem(self, name: str) -> Dict[str, Any]:
        if name not in self.problems:
            raise DecompositionError(f"unknown problem {name!r}")
        return self.problems[name]

    def _normalize(self, name: str, raw) -> Dict[str, Any]:
        formatter = self.witness_formats.get(name)
        if formatter is None:
            return {'problem': name, 'value': int(raw), 'witness': []}
        value, witness = formatter(raw)
        return {'problem': name, 'value': int(value), 'witness': witness}

    def solve(self, name: str, g: Graph, tree: Optional[BinaryIMDT] = None) -> Dict[str, Any]:
        entry = self.get_problem(name)
        if entry['input_class'] == COGRAPH:
            raw = entry['solver'](g)
        else:
            raw = entry['solver'](g, tree)
        return self._normalize(name, raw)

    def oracle(self, name: str, g: Graph, oracle: Optional[BruteForceOracle] = None) -> Dict[str, Any]:
        entry = self.get_problem(name)
        oracle = oracle or BruteForceOracle()
        raw = getattr(oracle, entry['oracle'])(g)
        if name in ('clique', 'mis'):
            raw = raw[0]
        elif name == 'vertex-cover':
            raw = raw[1]
        elif name in ('separator', 'separator-cograph'):
            raw = raw[1]
        return self._normalize(name, raw)

    def solve_all(self, g: Graph) -> pd.DataFrame:
        """
        Every applicable problem on one graph, sharing a single tree
        """
        g = as_graph(g)
        tree = binary_imdt(g)
        names = self.names(SWITCH_COGRAPH)
        if is_cograph(g):
            names += self.names(COGRAPH)
        rows = []
        for name in names:
            result = self.solve(name, g, tree)
            rows.append({
                'problem': name,
                'description': self.problems[name]['description'],
                'value': result['value'],
                'witness': ' | '.join(' '.join(map(str, part)) for part in result['witness']),
            })
        return pd.DataFrame(rows, columns=['problem', 'description', 'value', 'witness'])

    def compare_with_oracle(self, g: Graph, oracle: Optional[BruteForceOracle] = None) -> pd.DataFrame:
        g = as_graph(g)
        oracle = oracle or BruteForceOracle()
        tree = binary_imdt(g)
        rows = []
        for name in self.names(SWITCH_COGRAPH):
            if g.n > oracle.caps[self.problems[name]['cap']]:
                continue
            solved = self.solve(name, g, tree)
            expected = self.oracle(name, g, oracle)
            rows.append({'problem': name, 'solver': solved['value'], 'oracle': expected['value'],
                         'agree': solved['value'] == expected['value']})
        frame = pd.DataFrame(rows, columns=['problem', 'solver', 'oracle', 'agree'])
        if not frame.empty and not frame['agree'].all():
            logger.warning("solver and oracle disagree on %s", list(frame.loc[~frame['agree'], 'problem']))
        return frame
