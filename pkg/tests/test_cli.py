import json

import pytest

from cli import family_from_tree, main
from clique_width import eval_cw_expression, parse_sexpr
from graph_io import format_graph, parse_graph_text
from two_structure import ColorInvolution
from switch_cograph import is_switch_cograph


@pytest.fixture
def write(tmp_path):
    def _write(text, name="input.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def test_recognize(write, p4, bull, capsys):
    assert main(['recognize', write(format_graph(p4))]) == 0
    assert capsys.readouterr().out == "switch-cograph: yes\n"
    assert main(['recognize', '--witness', write(format_graph(bull))]) == 0
    assert capsys.readouterr().out == "switch-cograph: no\nwitness Bull 0 1 2 3 4\n"


def test_solve_prints_value_and_witness(write, p4, capsys):
    assert main(['solve', 'max-cut', write(format_graph(p4))]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "value 3"
    assert lines[1].startswith("witness")


def test_solve_on_a_prime_graph_exits_3(write, c5, capsys):
    assert main(['solve', 'clique', write(format_graph(c5))]) == 3
    err = capsys.readouterr().err
    assert err.startswith("error: not-switch-cograph")
    assert "C5" in err


def test_parse_error_exits_2(write, capsys):
    assert main(['recognize', write("graph 3\n0 9\n")]) == 2
    assert capsys.readouterr().err.startswith("error: parse line 2")


def test_missing_file_exits_1(tmp_path, capsys):
    assert main(['recognize', str(tmp_path / "absent.txt")]) == 1
    assert capsys.readouterr().err.startswith("error: io")


def test_oracle_cap_exits_4(write, capsys):
    assert main(['oracle', 'chromatic', '--cap', '3', write("graph 5\n0 1\n")]) == 4
    assert capsys.readouterr().err.startswith("error: cap")


def test_oracle_family_matches_tree_family(write, p4, capsys):
    assert main(['oracle', 'involution-modules', write(format_graph(p4))]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == family_from_tree(p4, ColorInvolution.for_graphs())
    assert "0 3" in lines


def test_decompose_outputs(write, c4, capsys):
    path = write(format_graph(c4))
    assert main(['decompose-modular', path]) == 0
    assert json.loads(capsys.readouterr().out)['tree'] == 'modular'
    assert main(['decompose-involution', '--format', 'dot', '--pivot', '2', path]) == 0
    assert capsys.readouterr().out.startswith('digraph involution')


def test_cwd_expr_round_trips(write, p4, capsys):
    assert main(['cwd-expr', write(format_graph(p4))]) == 0
    expression = parse_sexpr(capsys.readouterr().out)
    assert eval_cw_expression(expression, 4) == p4


def test_gen_writes_a_switch_cograph(capsys):
    assert main(['gen', '15', '--seed', '3']) == 0
    g = parse_graph_text(capsys.readouterr().out)
    assert g.n == 15 and is_switch_cograph(g)


def test_report_command(write, p4, capsys):
    assert main(['report', write(format_graph(p4))]) == 0
    assert capsys.readouterr().out.startswith("# Decomposition Report")


def test_max_cut_of_k4(write, capsys):
    assert main(['solve', 'max-cut', write("graph 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "value 4"
    assert len(lines[1].split()) == 3
