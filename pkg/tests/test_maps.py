"""Rational map construction, canonical forms, and exact/float evaluation."""

from fractions import Fraction as Q

import mpmath
import pytest

from abelkit.errors import (
    NotCanonical,
    NotTangentToIdentity,
    PoleHit,
    UnknownMap,
)
from abelkit.maps import (
    MapSpec,
    builtin_map,
    builtin_names,
    canonical_form,
    eval_exact,
    eval_real,
    higher_map,
    render_map,
    taylor,
)
from abelkit.polys import PolyQ


def test_builtin_names():
    names = builtin_names()
    for expected in ("A", "B", "I", "J", "ORACLE", "CUBIC_PLUS", "CUBIC_MINUS"):
        assert expected in names


def test_unknown_map():
    with pytest.raises(UnknownMap):
        builtin_map("NOPE")


def test_builtin_domains():
    assert builtin_map("A").domain_sup == 1
    assert builtin_map("B").domain_sup is None
    assert builtin_map("I").domain_sup == 1
    assert builtin_map("J").domain_sup is None
    assert builtin_map("ORACLE").domain_sup is None
    assert builtin_map("CUBIC_PLUS").domain_sup is None
    assert builtin_map("CUBIC_MINUS").domain_sup == 1


def test_tangency_guards():
    # f(0) != 0
    with pytest.raises(NotTangentToIdentity):
        MapSpec("bad", PolyQ([1, 1]), PolyQ([1]), None)
    # f'(0) != 1
    with pytest.raises(NotTangentToIdentity):
        MapSpec("bad", PolyQ([0, 2]), PolyQ([1]), None)
    # pole at 0
    with pytest.raises(NotTangentToIdentity):
        MapSpec("bad", PolyQ([0, 1]), PolyQ([0, 1, 1]), None)
    # second coefficient of f is not -1: f(x) = x + x^2 + ...
    with pytest.raises(NotCanonical):
        MapSpec("bad", PolyQ([0, 1, 1]), PolyQ([1]), None)


def test_normalization_and_equality():
    # x(1-x)/1 written with a common factor and scaled denominator
    m = MapSpec("alt", PolyQ([0, 2, -2]), PolyQ([2]), Q(1))
    assert m == builtin_map("A")
    assert hash(m) == hash(builtin_map("A"))


def test_integer_coeffs():
    pc, qc = builtin_map("J").integer_coeffs()
    assert pc == (0, 1, 1)
    assert qc == (1, 2)
    # scaling clears fractions
    m = MapSpec("half", PolyQ([0, Q(1, 2)]), PolyQ([Q(1, 2), Q(1, 2)]), None)
    pc, qc = m.integer_coeffs()
    assert pc == (0, 1)
    assert qc == (1, 1)


def test_taylor_of_builtin():
    # B: x/(1+x+x^2) = x - x^2 + x^4 - x^5 + ...
    t = taylor(builtin_map("B"), 6)
    assert t == [Q(0), Q(1), Q(-1), Q(0), Q(1), Q(-1), Q(0)]
    # A: polynomial map
    t = taylor(builtin_map("A"), 4)
    assert t == [Q(0), Q(1), Q(-1), Q(0), Q(0)]


CANONICAL_CASES = {
    # name -> (b1, canonical tail c_1..c_4)
    "A": (Q(1), (Q(1), Q(1), Q(1), Q(1))),
    "B": (Q(1), (Q(1), Q(0), Q(0), Q(0))),
    "I": (Q(-1), (Q(-1), Q(0), Q(0), Q(0))),
    "J": (Q(-1), (Q(-1), Q(1), Q(-1), Q(1))),
    "ORACLE": (Q(0), (Q(0), Q(0), Q(0), Q(0))),
    "CUBIC_PLUS": (Q(0), (Q(0), Q(1), Q(0), Q(0))),
    "CUBIC_MINUS": (Q(0), (Q(0), Q(-1), Q(0), Q(0))),
}


@pytest.mark.parametrize("name", sorted(CANONICAL_CASES))
def test_canonical_forms(name):
    b1, tail = CANONICAL_CASES[name]
    cf = canonical_form(builtin_map(name), 4)
    assert cf.b1 == b1
    assert cf.coefficients == tail


def test_canonical_form_of_a_long_tail():
    # A: 1/f(1/w) = w + 1 + sum_j w^-j exactly (geometric tail, all ones)
    cf = canonical_form(builtin_map("A"), 10)
    assert all(c == 1 for c in cf.coefficients)


def test_eval_exact():
    B = builtin_map("B")
    assert eval_exact(B, Q(1)) == Q(1, 3)
    assert eval_exact(B, Q(1, 2)) == Q(2, 7)
    A = builtin_map("A")
    assert eval_exact(A, Q(1, 3)) == Q(2, 9)
    with pytest.raises(PoleHit):
        # denominator 1 + x + x^2 - 3x^3 vanishes at x = 1
        pole_map = MapSpec("p", PolyQ([0, 1]), PolyQ([1, 1, 1, -3]), None)
        eval_exact(pole_map, Q(1))


def test_eval_real_matches_exact():
    I = builtin_map("I")
    v = eval_real(I, Q(1, 3), prec=128)
    with mpmath.workprec(160):
        assert abs(v - mpmath.mpf(3) / 11) < mpmath.mpf(2) ** -120


def test_contains():
    A = builtin_map("A")
    assert A.contains(Q(1, 2))
    assert not A.contains(Q(1))
    assert not A.contains(Q(0))
    B = builtin_map("B")
    assert B.contains(Q(10**9))


def test_higher_map():
    m = higher_map(3, 1)
    # y / (1 + y + y^4)
    assert m.den == PolyQ([1, 1, 0, 0, 1])
    assert m.num == PolyQ([0, 1])
    assert m.domain_sup is None
    assert higher_map(2, -1).domain_sup == 1
    with pytest.raises(ValueError):
        higher_map(1, 1)
    with pytest.raises(ValueError):
        higher_map(2, 2)
    with pytest.raises(UnknownMap):
        builtin_map("HIGHER(1,+1)")


def test_higher_map_canonical_tail():
    # 1/f(1/w) for y/(1+y+y^{l+1}) is w + 1 + w^{-l} exactly
    cf = canonical_form(higher_map(4, 1), 8)
    assert cf.b1 == 0
    assert cf.coefficients == (Q(0), Q(0), Q(0), Q(1), Q(0), Q(0), Q(0), Q(0))


def test_builtin_higher_names():
    assert builtin_map("HIGHER(2,+1)") == builtin_map("CUBIC_PLUS")
    assert builtin_map("HIGHER(2,-1)") == builtin_map("CUBIC_MINUS")
    assert builtin_map("HIGHER(3,+1)") == higher_map(3, 1)


def test_render_round_trip():
    from abelkit.mapexpr import parse_map_expr

    for name in builtin_names():
        m = builtin_map(name)
        again = parse_map_expr(render_map(m), domain_sup=m.domain_sup)
        assert again == m
