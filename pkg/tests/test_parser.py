from fractions import Fraction

import pytest

from spinbfv.config import RunConfig
from spinbfv.errors import DomainError, ParseError
from spinbfv.parser import BinOp, Call, Name, Number, Power, eval_expr, parse_expr, tokenize
from spinbfv.superalg import render


def evaluate(text, m):
    return eval_expr(m, parse_expr(text, m.d))


class TestParse:
    def test_precedence(self):
        ast = parse_expr("x1 + 2*p1^2")
        assert isinstance(ast, BinOp) and ast.op == "+"
        assert isinstance(ast.right, BinOp) and ast.right.op == "*"
        assert isinstance(ast.right.right, Power) and ast.right.right.exponent == 2

    def test_rational_literal(self):
        ast = parse_expr("3/4")
        assert isinstance(ast, Number) and ast.value == Fraction(3, 4)

    def test_call_with_k(self):
        ast = parse_expr("xi(2, x1)")
        assert isinstance(ast, Call)
        assert (ast.func, ast.k) == ("xi", 2)
        assert isinstance(ast.args[0], Name)

    def test_byte_offsets(self):
        with pytest.raises(ParseError) as info:
            parse_expr("x1\u00a0+ y")
        assert info.value.position == 6
        assert [t.pos for t in tokenize("x1 + p1")] == [0, 3, 5, 7]

    @pytest.mark.parametrize(
        "text,position",
        [
            ("x1 + y", 5),
            ("th1^2", 3),
            ("x1^-1", 2),
            ("1/0", 2),
            ("pb(x1)", 5),
            ("Pi(x1)", 3),
            ("xi(x1, x1)", 3),
            ("(x1 + p1", 8),
            ("x1 x1", 3),
        ],
    )
    def test_errors(self, text, position):
        with pytest.raises(ParseError) as info:
            parse_expr(text, d=2)
        assert info.value.position == position

    def test_generator_index_checked_against_d(self):
        with pytest.raises(ParseError, match="Unknown name"):
            parse_expr("x3", d=2)
        assert isinstance(parse_expr("x3"), Name)

    def test_laurent_powers_allowed(self):
        assert parse_expr("gamma^-2*hbar^-1")

    def test_parse_error_is_domain_error(self):
        with pytest.raises(DomainError):
            parse_expr("+")


class TestEval:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("star(th1, th1)", "hbar"),
            ("sb(S(), S())", "0"),
            ("pb(S(), S())", "0"),
            ("pb(p1, x1)", "1"),
            ("mb(x1, p1)", "-hbar"),
            ("mb(Pi(), Pi()) - hbar*pb(Pi(), Pi())", "0"),
            ("q1(xi(2, 1)) - 1/4*eta(1, 1)", "0"),
            ("q0(xi(1, x1)) - X(1, x1)", "0"),
            ("gamma^-1*gamma^2", "gamma"),
            ("ck(1, th1, th1)", "1"),
        ],
    )
    def test_values(self, m1, text, expected):
        assert evaluate(text, m1).text == expected

    def test_render_parses_back(self, m2):
        value = evaluate("Y(2, x1) + 3/2*hbar*gamma^-1*beta", m2).element
        assert evaluate(render(value), m2).element == value

    def test_terms(self, m1):
        rendering = evaluate("2*x1 - 1/3", m1)
        assert rendering.terms == [
            {"coeff": "-1/3", "monomial": []},
            {"coeff": "2", "monomial": [["x1", 1]]},
        ]

    def test_accepts_config(self):
        assert eval_expr(RunConfig(d=1), parse_expr("pb(th1, th1)")).text == "2"

    def test_domain_error_during_evaluation(self, m1):
        with pytest.raises(DomainError):
            evaluate("eta(0, x1)", m1)
        with pytest.raises(DomainError):
            evaluate("star(gamma^-1, gamma^-1)", m1)
