"""Parser for rational-map expressions in the variable x."""

from fractions import Fraction as Q

import pytest

from abelkit.errors import (
    DivisionByZeroPolynomial,
    MapExprSyntaxError,
    NotCanonical,
    NotTangentToIdentity,
)
from abelkit.mapexpr import parse_map_expr
from abelkit.maps import builtin_map


def test_builtin_equivalents():
    assert parse_map_expr("x*(1-x)", domain_sup=Q(1)) == builtin_map("A")
    assert parse_map_expr("x/(1+x+x^2)") == builtin_map("B")
    assert parse_map_expr("x/(1+x-x^2)", domain_sup=Q(1)) == builtin_map("I")
    assert parse_map_expr("x*(1+x)/(1+2*x)") == builtin_map("J")
    assert parse_map_expr("x/(1+x)") == builtin_map("ORACLE")


def test_whitespace_and_parens():
    assert parse_map_expr("  x * ( 1 - x )  ", domain_sup=Q(1)) == builtin_map("A")
    assert parse_map_expr("((x))/((1+x+x^2))") == builtin_map("B")


def test_unary_minus_and_powers():
    m = parse_map_expr("-(-x) - x^2")
    assert m == parse_map_expr("x - x*x")


def test_rational_simplification():
    # common factor cancels: x(1+x)/( (1+x)(1+x+x^2) ) == B
    assert parse_map_expr("x*(1+x)/((1+x)*(1+x+x^2))") == builtin_map("B")


def test_syntax_errors():
    for bad in ("", "x +", "y/(1+y)", "x**2", "x^(2)", "2x", "x/", "(x", "x)"):
        with pytest.raises(MapExprSyntaxError):
            parse_map_expr(bad)


def test_semantic_errors():
    with pytest.raises(DivisionByZeroPolynomial):
        parse_map_expr("x/(x-x)")
    with pytest.raises(NotTangentToIdentity):
        parse_map_expr("2*x/(1+x)")
    with pytest.raises(NotTangentToIdentity):
        parse_map_expr("1+x")
    with pytest.raises(NotCanonical):
        parse_map_expr("x/(1-x)")  # f(x) = x + x^2 + ...


def test_domain_sup_attached():
    m = parse_map_expr("x*(1-x)", domain_sup=Q(1))
    assert m.domain_sup == Q(1)
    assert parse_map_expr("x/(1+x+x^2)").domain_sup is None


def test_name_preserved():
    m = parse_map_expr("x/(1+x+x^2)")
    assert m.name == "x/(1+x+x^2)"
