import argparse
import logging
import sys
from typing import List, Optional

from clique_width import clique_width_expression, to_sexpr
from errors import CapExceededError, DecompositionError, NotCographError, NotSwitchCographError, ParseError
from graph_io import format_graph, read_structure
from involution_modules import enumerate_involution_modules_from_tree, imd_tree
from modular import modular_decomposition
from oracles import BruteForceOracle
from problem_catalog import ProblemCatalog
from switch_cograph import binary_imdt, forbidden_subgraph_witness, is_switch_cograph, random_switch_cograph
from tree_reports import DecompositionReportGenerator
from two_structure import as_graph

logger = logging.getLogger(__name__)

_LOG_LEVEL_STRINGS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']
_FAMILY_PROBLEMS = ['involution-modules', 'modules', 'umodules']
# witness search is quintic; skip it on larger inputs
_WITNESS_LIMIT = 40

EXIT_CODES = {ParseError: 2, NotCographError: 3, NotSwitchCographError: 3, CapExceededError: 4}


def setup_logging(level: str = 'WARNING') -> None:
    logging.basicConfig(format='[%(levelname)s] %(name)s: %(message)s', level=level, stream=sys.stderr)


def build_parser(catalog: ProblemCatalog) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='imdecomp',
        description='Involution modular decomposition and switch-cograph solvers',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument('--log-level', dest='log_level', choices=_LOG_LEVEL_STRINGS, default='WARNING',
                        help='Log level (logs go to stderr)')
    commands = parser.add_subparsers(dest='command', required=True)

    modular = commands.add_parser('decompose-modular', help='Strong-module tree')
    modular.add_argument('file')
    modular.add_argument('--format', choices=['dot', 'json'], default='json')

    involution = commands.add_parser('decompose-involution', help='Directed involution-module tree')
    involution.add_argument('file')
    involution.add_argument('--format', choices=['dot', 'json'], default='json')
    involution.add_argument('--pivot', type=int, default=0, help='Vertex used for the pivot switch')

    recognize = commands.add_parser('recognize', help='Switch-cograph recognition')
    recognize.add_argument('file')
    recognize.add_argument('--witness', action='store_true', help='Print a forbidden induced subgraph')

    solve = commands.add_parser('solve', help='Solve a problem on a switch cograph')
    solve.add_argument('problem', choices=catalog.names())
    solve.add_argument('file')

    expression = commands.add_parser('cwd-expr', help='Four-label clique-width expression')
    expression.add_argument('file')

    generate = commands.add_parser('gen', help='Random switch cograph')
    generate.add_argument('n', type=int)
    generate.add_argument('--seed', type=int, default=0)
    generate.add_argument('--antitwin-prob', dest='antitwin_prob', type=float, default=0.5)

    oracle = commands.add_parser('oracle', help='Brute-force answer')
    oracle.add_argument('problem', choices=catalog.names() + _FAMILY_PROBLEMS)
    oracle.add_argument('file')
    oracle.add_argument('--cap', type=int, help='Override the vertex cap of this search')

    report = commands.add_parser('report', help='Markdown decomposition report')
    report.add_argument('file')
    return parser


def _format_vertices(vertices) -> str:
    return ' '.join(map(str, sorted(vertices)))


def _solution_lines(result) -> List[str]:
    lines = [f"value {result['value']}"]
    lines.extend(f"witness {_format_vertices(part)}".rstrip() for part in result['witness'])
    return lines


def _with_witness(exc: NotSwitchCographError, g) -> NotSwitchCographError:
    if exc.witness is None and g.n <= _WITNESS_LIMIT:
        return NotSwitchCographError(exc.prime_vertices, forbidden_subgraph_witness(g))
    return exc


def run(args, catalog: ProblemCatalog, out) -> int:
    reports = DecompositionReportGenerator()

    if args.command == 'gen':
        out.write(format_graph(random_switch_cograph(args.n, seed=args.seed, antitwin_prob=args.antitwin_prob)))
        return 0

    ts, involution = read_structure(args.file)

    if args.command == 'decompose-modular':
        tree = modular_decomposition(ts)
        out.write(reports.rooted_to_dot(tree) if args.format == 'dot' else reports.dumps(reports.rooted_to_json(tree)))
    elif args.command == 'decompose-involution':
        tree = imd_tree(ts, involution, pivot=args.pivot)
        out.write(reports.crossing_to_dot(tree) if args.format == 'dot'
                  else reports.dumps(reports.crossing_to_json(tree)))
    elif args.command == 'recognize':
        g = as_graph(ts)
        recognized = is_switch_cograph(g)
        out.write(f"switch-cograph: {'yes' if recognized else 'no'}\n")
        witness = forbidden_subgraph_witness(g) if args.witness and not recognized else None
        if witness is not None:
            out.write(f"witness {witness.name} {_format_vertices(witness.vertices)}\n")
    elif args.command == 'solve':
        g = as_graph(ts)
        try:
            result = catalog.solve(args.problem, g)
        except NotSwitchCographError as exc:
            raise _with_witness(exc, g) from None
        out.write('\n'.join(_solution_lines(result)) + '\n')
    elif args.command == 'cwd-expr':
        g = as_graph(ts)
        try:
            expression = clique_width_expression(g, binary_imdt(g))
        except NotSwitchCographError as exc:
            raise _with_witness(exc, g) from None
        out.write(to_sexpr(expression) + '\n')
    elif args.command == 'oracle':
        run_oracle(args, ts, involution, catalog, out)
    elif args.command == 'report':
        out.write(reports.generate_report(ts, involution)['content'])
    return 0


def run_oracle(args, ts, involution, catalog: ProblemCatalog, out) -> None:
    oracle = BruteForceOracle()
    if args.problem in _FAMILY_PROBLEMS:
        if args.cap is not None:
            oracle.caps['families'] = args.cap
        finders = {
            'involution-modules': lambda: oracle.brute_involution_modules(ts, involution),
            'modules': lambda: oracle.brute_modules(ts),
            'umodules': lambda: oracle.brute_umodules(ts),
        }
        for member in finders[args.problem]():
            out.write(_format_vertices(member) + '\n')
        return
    if args.cap is not None:
        oracle.caps[catalog.get_problem(args.problem)['cap']] = args.cap
    result = catalog.oracle(args.problem, as_graph(ts), oracle)
    out.write('\n'.join(_solution_lines(result)) + '\n')


def family_from_tree(ts, involution, cap: int = 1 << 16) -> List[str]:
    """
    Tree-side family in the same line format as `oracle involution-modules`
    """
    tree = imd_tree(ts, involution)
    return [_format_vertices(member) for member in enumerate_involution_modules_from_tree(tree, cap)]


def main(argv: Optional[List[str]] = None) -> int:
    catalog = ProblemCatalog()
    parser = build_parser(catalog)
    args = parser.parse_args(argv)
    setup_logging(args.log_level)
    try:
        return run(args, catalog, sys.stdout)
    except DecompositionError as exc:
        sys.stderr.write(exc.to_line() + '\n')
        return EXIT_CODES.get(type(exc), 1)
    except OSError as exc:
        sys.stderr.write(f"error: io {exc}\n")
        return 1


if __name__ == '__main__':
    sys.exit(main())
