import pytest
from hypothesis import given, settings

from clique_width import (Create, Join, Relabel, Union, clique_width_expression, eval_cw_expression, labels_used,
                          parse_sexpr, to_sexpr)
from errors import ExpressionError, NotSwitchCographError
from two_structure import Graph

from strategies import switch_cographs


def test_edge_expression():
    g = Graph.from_edges(2, [(0, 1)])
    assert to_sexpr(clique_width_expression(g)) == "(join 1 2 (union (v 0 1) (v 1 2)))"


def test_non_edge_expression_has_no_join():
    expression = clique_width_expression(Graph.from_edges(2, []))
    assert to_sexpr(expression) == "(union (v 0 1) (v 1 4))"
    assert eval_cw_expression(expression).edge_count() == 0


def test_single_vertex_expression():
    expression = clique_width_expression(Graph.from_edges(1, []))
    assert expression == Create(0, 1)


def test_p4_expression_rebuilds_p4(p4):
    expression = clique_width_expression(p4)
    assert eval_cw_expression(expression, 4) == p4
    assert labels_used(expression) <= {1, 2, 3, 4}


def test_prime_graph_has_no_expression(bull):
    with pytest.raises(NotSwitchCographError):
        clique_width_expression(bull)


@settings(max_examples=80, deadline=None)
@given(switch_cographs(max_n=40))
def test_expression_rebuilds_the_graph_with_four_labels(g):
    expression = clique_width_expression(g)
    assert labels_used(expression) <= {1, 2, 3, 4}
    assert eval_cw_expression(expression, g.n) == g


def test_text_form_parses_back(p4):
    expression = clique_width_expression(p4)
    assert parse_sexpr(to_sexpr(expression)) == expression


def test_hand_written_expression():
    text = "(relabel 2 1 (join 1 2 (union (v 0 1) (union (v 1 2) (v 2 2)))))"
    expression = parse_sexpr(text)
    assert isinstance(expression, Relabel)
    assert eval_cw_expression(expression).edges() == [(0, 1), (0, 2)]
    assert labels_used(expression) == frozenset({1, 2})


@pytest.mark.parametrize("build", [
    lambda: Create(0, 5),
    lambda: Create(-1, 1),
    lambda: Join(2, 2, Create(0, 2)),
    lambda: Relabel(0, 1, Create(0, 1)),
])
def test_invalid_operations(build):
    with pytest.raises(ExpressionError):
        build()


@pytest.mark.parametrize("text", [
    "",
    "(v 0 1",
    "(v 0 1))",
    "(v 0 1) (v 1 1)",
    "(frob 1 2)",
    "(v 0 x)",
    "(union (v 0 1))",
    "(join 1 2 3)",
])
def test_malformed_text(text):
    with pytest.raises(ExpressionError):
        parse_sexpr(text)


def test_duplicate_vertex_creation():
    with pytest.raises(ExpressionError):
        eval_cw_expression(Union(Create(0, 1), Create(0, 2)))
    with pytest.raises(ExpressionError):
        eval_cw_expression(Create(3, 1), n=2)
