import datetime
import json
import logging
from typing import Any, Dict, List, Optional

import networkx as nx
import pandas as pd

from errors import DecompositionError, StructureError
from involution_modules import CrossingFamilyTree, imd_tree
from modular import COMPLETE, LEAF, DecompNode, DecompTree, modular_decomposition
from problem_catalog import ProblemCatalog
from switch_cograph import BinaryIMDT, ImdtNode, binary_imdt, forbidden_subgraph_witness, is_switch_cograph
from two_structure import ColorInvolution, Graph, TwoStructure

logger = logging.getLogger(__name__)


class DecompositionReportGenerator:
    """
    DOT, JSON and markdown renderings of decomposition trees
    """

    def __init__(self):
        self.dot_styles = self._initialize_dot_styles()
        self.report_templates = self._initialize_report_templates()

    def _initialize_dot_styles(self):
        """
        Node attributes per node kind
        """
        return {
            'leaf': {'shape': 'circle'},
            'prime': {'shape': 'diamond'},
            'complete': {'shape': 'box'},
            'series': {'shape': 'box'},
            'parallel': {'shape': 'box'},
            'clique': {'shape': 'box'},
            'bipartite': {'shape': 'box', 'style': 'filled', 'fillcolor': 'lightgrey'},
        }

    def _initialize_report_templates(self):
        """
        Report types and the sections each one renders, in order
        """
        return {
            'Full Decomposition': {
                'sections': ['Structure Summary', 'Recognition', 'Tree Statistics', 'Solver Results'],
            },
            'Recognition Summary': {
                'sections': ['Structure Summary', 'Recognition'],
            },
        }

    # DOT

    def _dot_node(self, node_id: int, label: str, kind: str) -> str:
        attributes = {'label': label, **self.dot_styles[kind]}
        rendered = ', '.join(f'{key}="{value}"' for key, value in attributes.items())
        return f"  n{node_id} [{rendered}];"

    def _dot(self, name: str, nodes: List[str], edges: List[str]) -> str:
        return '\n'.join([f"digraph {name} {{"] + nodes + edges + ["}"]) + '\n'

    def rooted_to_dot(self, tree: DecompTree) -> str:
        ids = {id(node): index for index, node in enumerate(tree.nodes())}
        nodes, edges = [], []
        for node in tree.nodes():
            kind = tree.label(node)
            label = str(node.vertex) if node.is_leaf else kind
            nodes.append(self._dot_node(ids[id(node)], label, kind))
            edges.extend(f"  n{ids[id(node)]} -> n{ids[id(child)]};" for child in node.children)
        return self._dot('modular', nodes, edges)

    def crossing_to_dot(self, tree: CrossingFamilyTree) -> str:
        nodes = []
        for node in sorted(tree.shape.nodes):
            kind = tree.kind(node)
            nodes.append(self._dot_node(node, str(node) if kind == LEAF else kind, kind))
        edges = []
        for a, b in sorted(tuple(sorted(edge)) for edge in tree.shape.edges):
            if (a, b) in tree.arcs and (b, a) in tree.arcs:
                edges.append(f"  n{a} -> n{b} [dir=both];")
            elif (a, b) in tree.arcs:
                edges.append(f"  n{a} -> n{b};")
            else:
                edges.append(f"  n{b} -> n{a};")
        return self._dot('involution', nodes, edges)

    def binary_to_dot(self, tree: BinaryIMDT) -> str:
        order = _preorder(tree.root)
        ids = {id(node): index for index, node in enumerate(order)}
        nodes, edges = [], []
        for node in order:
            if node.is_leaf:
                nodes.append(self._dot_node(ids[id(node)], str(min(node.leaves)), LEAF))
                continue
            label = f"{node.kind}\\nN1={sorted(node.part1)}\\nN2={sorted(node.part2)}"
            nodes.append(self._dot_node(ids[id(node)], label, node.kind))
            edges.extend(f"  n{ids[id(node)]} -> n{ids[id(child)]};" for child in node.children)
        return self._dot('binary_imdt', nodes, edges)

    # JSON

    def rooted_to_json(self, tree: DecompTree) -> Dict[str, Any]:
        ids = {id(node): index for index, node in enumerate(tree.nodes())}
        nodes, edges = [], []
        for node in tree.nodes():
            entry = {'id': ids[id(node)], 'kind': node.kind}
            if node.is_leaf:
                entry['vertex'] = node.vertex
            elif node.kind == COMPLETE:
                entry['color'] = node.color
            nodes.append(entry)
            edges.extend({'source': ids[id(node)], 'target': ids[id(child)], 'direction': 'forward'}
                         for child in node.children)
        return {'tree': 'modular', 'n': tree.n, 'graph': tree.is_graph, 'root': 0, 'nodes': nodes, 'edges': edges}

    def crossing_to_json(self, tree: CrossingFamilyTree) -> Dict[str, Any]:
        nodes = []
        for node in sorted(tree.shape.nodes):
            entry = {'id': node, 'kind': tree.kind(node)}
            if entry['kind'] == LEAF:
                entry['vertex'] = node
            nodes.append(entry)
        edges = []
        for a, b in sorted(tuple(sorted(edge)) for edge in tree.shape.edges):
            if (a, b) in tree.arcs and (b, a) in tree.arcs:
                direction = 'double'
            elif (a, b) in tree.arcs:
                direction = 'forward'
            else:
                direction = 'backward'
            edges.append({'source': a, 'target': b, 'direction': direction})
        return {'tree': 'involution', 'n': tree.n, 'pivot': tree.pivot, 'nodes': nodes, 'edges': edges}

    def binary_to_json(self, tree: BinaryIMDT) -> Dict[str, Any]:
        order = _preorder(tree.root)
        ids = {id(node): index for index, node in enumerate(order)}
        nodes, edges = [], []
        for node in order:
            entry = {'id': ids[id(node)], 'kind': node.kind,
                     'part1': sorted(node.part1), 'part2': sorted(node.part2)}
            if node.is_leaf:
                entry['vertex'] = min(node.leaves)
            nodes.append(entry)
            if not node.is_leaf:
                for child, flip in ((node.left, node.flip_left), (node.right, node.flip_right)):
                    edges.append({'source': ids[id(node)], 'target': ids[id(child)],
                                  'direction': 'forward', 'flip': flip})
        return {'tree': 'binary', 'n': tree.n, 'root': 0, 'nodes': nodes, 'edges': edges}

    def dumps(self, payload: Dict[str, Any]) -> str:
        return json.dumps(payload, indent=2, sort_keys=True) + '\n'

    def from_json(self, payload: Dict[str, Any]):
        """
        Rebuild a tree written by one of the *_to_json methods
        """
        readers = {'modular': _read_rooted, 'involution': _read_crossing, 'binary': _read_binary}
        reader = readers.get(payload.get('tree'))
        if reader is None:
            raise StructureError(f"unknown tree type {payload.get('tree')!r}")
        try:
            return reader(payload)
        except DecompositionError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise StructureError(f"malformed tree JSON: {exc}") from exc

    # tables and reports

    def binary_node_table(self, tree: BinaryIMDT) -> pd.DataFrame:
        rows = []
        for index, node in enumerate(_preorder(tree.root)):
            rows.append({
                'node': index,
                'kind': node.kind,
                'size': len(node.leaves),
                'N1': ' '.join(map(str, sorted(node.part1))),
                'N2': ' '.join(map(str, sorted(node.part2))),
                'root': node.is_root,
            })
        return pd.DataFrame(rows)

    def build_report_data(self, ts: TwoStructure, involution: ColorInvolution,
                          catalog: Optional[ProblemCatalog] = None) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'n': ts.n,
            'num_colors': ts.num_colors,
            'is_graph': isinstance(ts, Graph),
            'modular': modular_decomposition(ts),
            'involution': imd_tree(ts, involution),
        }
        if isinstance(ts, Graph):
            data['edges'] = ts.edge_count()
            data['switch_cograph'] = is_switch_cograph(ts)
            data['witness'] = None if data['switch_cograph'] or ts.n > 40 else forbidden_subgraph_witness(ts)
            if data['switch_cograph']:
                catalog = catalog or ProblemCatalog()
                data['binary'] = binary_imdt(ts)
                data['solutions'] = catalog.solve_all(ts)
        return data

    def _structure_section(self, data: Dict[str, Any]) -> str:
        text = "## Structure Summary\n\n"
        text += f"- **Vertices:** {data['n']}\n"
        text += f"- **Colors:** {data['num_colors']}\n"
        if data['is_graph']:
            text += f"- **Edges:** {data['edges']}\n"
        return text + "\n---\n"

    def _recognition_section(self, data: Dict[str, Any]) -> str:
        text = "## Recognition\n\n"
        if not data['is_graph']:
            return text + "Switch-cograph recognition applies to graphs only.\n\n---\n"
        text += f"**Switch cograph:** {'yes' if data['switch_cograph'] else 'no'}\n"
        if data.get('witness') is not None:
            witness = data['witness']
            text += f"\n**Forbidden induced subgraph:** {witness.name} on {list(witness.vertices)}\n"
        return text + "\n---\n"

    def _statistics_section(self, data: Dict[str, Any]) -> str:
        modular = data['modular']
        crossing = data['involution']
        rows = [{'tree': 'modular', 'kind': modular.label(node)} for node in modular.internal_nodes()]
        rows += [{'tree': 'involution', 'kind': crossing.kind(node)} for node in crossing.internal_nodes()]
        if 'binary' in data:
            rows += [{'tree': 'binary', 'kind': node.kind} for node in data['binary'].internal_nodes()]
        kinds = pd.DataFrame(rows, columns=['tree', 'kind'])
        text = "## Tree Statistics\n\n"
        if kinds.empty:
            return text + "No internal nodes.\n\n---\n"
        counts = kinds.groupby(['tree', 'kind']).size().rename('nodes').reset_index()
        text += "```\n" + counts.to_string(index=False) + "\n```\n"
        sinks = crossing.sinks()
        text += (f"\nThe involution tree has {len(sinks)} sink node(s) {sinks} "
                 f"joined by {len(crossing.double_arcs())} double arc(s).\n")
        return text + "\n---\n"

    def _solver_section(self, data: Dict[str, Any]) -> str:
        text = "## Solver Results\n\n"
        solutions = data.get('solutions')
        if solutions is None:
            return text + "Solvers need a switch cograph.\n\n---\n"
        return text + "```\n" + solutions.to_string(index=False) + "\n```\n\n---\n"

    def generate_report(self, ts: TwoStructure, involution: ColorInvolution,
                        report_type: str = 'Full Decomposition') -> Dict[str, Any]:
        if report_type not in self.report_templates:
            raise DecompositionError(f"unknown report type {report_type!r}")
        sections = self.report_templates[report_type]['sections']
        data = self.build_report_data(ts, involution)
        writers = {
            'Structure Summary': self._structure_section,
            'Recognition': self._recognition_section,
            'Tree Statistics': self._statistics_section,
            'Solver Results': self._solver_section,
        }
        content = f"# Decomposition Report\n## {report_type}\n\n---\n"
        for section in sections:
            content += writers[section](data)
        return {
            'content': content,
            'report_type': report_type,
            'generation_time': datetime.datetime.now(),
            'total_sections': len(sections),
        }


def _preorder(root: ImdtNode) -> List[ImdtNode]:
    order = []
    stack = [root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(reversed(node.children))
    return order


def _children_by_id(payload: Dict[str, Any]) -> Dict[int, List[Dict[str, Any]]]:
    children: Dict[int, List[Dict[str, Any]]] = {entry['id']: [] for entry in payload['nodes']}
    for edge in payload['edges']:
        children[edge['source']].append(edge)
    return children


def _bottom_up_ids(payload: Dict[str, Any]) -> List[int]:
    children = _children_by_id(payload)
    order = []
    stack = [payload['root']]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(edge['target'] for edge in children[node])
    if sorted(order) != sorted(children):
        raise StructureError("tree JSON is not a single rooted tree")
    return list(reversed(order))


def _read_rooted(payload: Dict[str, Any]) -> DecompTree:
    entries = {entry['id']: entry for entry in payload['nodes']}
    children = _children_by_id(payload)
    built: Dict[int, DecompNode] = {}
    for node_id in _bottom_up_ids(payload):
        entry = entries[node_id]
        if entry['kind'] == LEAF:
            built[node_id] = DecompNode(LEAF, frozenset([entry['vertex']]))
            continue
        kids = [built[edge['target']] for edge in children[node_id]]
        leaves = frozenset().union(*(kid.leaves for kid in kids))
        built[node_id] = DecompNode(entry['kind'], leaves, kids, entry.get('color'))
    return DecompTree(built[payload['root']], payload['n'], payload.get('graph', False))


def _read_crossing(payload: Dict[str, Any]) -> CrossingFamilyTree:
    shape = nx.Graph(pivot=payload['pivot'])
    for entry in payload['nodes']:
        shape.add_node(entry['id'], kind=entry['kind'])
    arcs = set()
    for edge in payload['edges']:
        a, b = edge['source'], edge['target']
        shape.add_edge(a, b)
        if edge['direction'] == 'double':
            arcs.update({(a, b), (b, a)})
        elif edge['direction'] == 'forward':
            arcs.add((a, b))
        elif edge['direction'] == 'backward':
            arcs.add((b, a))
        else:
            raise StructureError(f"unknown edge direction {edge['direction']!r}")
    if not nx.is_tree(shape):
        raise StructureError("tree JSON is not a tree")
    return CrossingFamilyTree(shape, payload['n'], payload['pivot'], frozenset(arcs))


def _read_binary(payload: Dict[str, Any]) -> BinaryIMDT:
    entries = {entry['id']: entry for entry in payload['nodes']}
    children = _children_by_id(payload)
    built: Dict[int, ImdtNode] = {}
    for node_id in _bottom_up_ids(payload):
        entry = entries[node_id]
        part1, part2 = frozenset(entry['part1']), frozenset(entry['part2'])
        node = ImdtNode(part1 | part2, part1, part2, entry['kind'], is_root=node_id == payload['root'])
        if entry['kind'] != LEAF:
            (left, right) = children[node_id]
            node.left, node.flip_left = built[left['target']], left['flip']
            node.right, node.flip_right = built[right['target']], right['flip']
            node.leaves = node.left.leaves | node.right.leaves
        built[node_id] = node
    return BinaryIMDT(built[payload['root']], payload['n'])
