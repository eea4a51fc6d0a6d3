"""Tests for exact orbits, sequence recurrences, and pattern predicates.

The frozen sequences below were independently verified by exact
arithmetic; every value is reproduced from first principles here.
"""

import random
from fractions import Fraction as Q

import pytest

from abelkit.errors import (
    DegenerateStep,
    NonIntegralStep,
    OrbitEscaped,
    PoleHit,
    SizeLimit,
)
from abelkit.maps import builtin_map, eval_exact
from abelkit.orbits import (
    check_patterns,
    orbit_exact,
    orbit_to_json,
    pattern_report_to_json,
    rational_terms_json,
    reparametrize,
    t_sequence,
    u_sequence,
    v_sequence,
)

A = builtin_map("A")
B = builtin_map("B")
I = builtin_map("I")
J = builtin_map("J")
ORACLE = builtin_map("ORACLE")

ORBITS = {
    ("A", Q(1, 2)): [Q(1, 2), Q(1, 4), Q(3, 16), Q(39, 256), Q(8463, 65536),
                     Q(483008799, 4294967296)],
    ("B", Q(1)): [Q(1), Q(1, 3), Q(3, 13), Q(39, 217), Q(8463, 57073),
                  Q(483008799, 3811958497)],
    ("A", Q(1, 3)): [Q(1, 3), Q(2, 9), Q(14, 81), Q(938, 6561),
                     Q(5274374, 43046721),
                     Q(199225484935778, 1853020188851841)],
    ("B", Q(1, 2)): [Q(1, 2), Q(2, 7), Q(14, 67), Q(938, 5623),
                     Q(5274374, 37772347),
                     Q(199225484935778, 1653794703916063)],
    ("I", Q(1, 2)): [Q(1, 2), Q(2, 5), Q(10, 31), Q(310, 1171),
                     Q(363010, 1638151),
                     Q(594665194510, 3146427633211)],
    ("J", Q(1)): [Q(1), Q(2, 3), Q(10, 21), Q(310, 861), Q(363010, 1275141),
                  Q(594665194510, 2551762438701)],
    ("I", Q(1, 3)): [Q(1, 3), Q(3, 11), Q(33, 145), Q(4785, 24721),
                     Q(118289985, 706521601),
                     Q(83574429584465985, 568754681712768961)],
    ("J", Q(1, 2)): [Q(1, 2), Q(3, 8), Q(33, 112), Q(4785, 19936),
                     Q(118289985, 588231616),
                     Q(83574429584465985, 485180252128302976)],
}

T_FROM_2 = [Q(2), Q(2), Q(4, 3), Q(16, 13), Q(256, 217), Q(65536, 57073),
            Q(4294967296, 3811958497)]
T_FROM_3 = [Q(3), Q(3, 2), Q(9, 7), Q(81, 67), Q(6561, 5623),
            Q(43046721, 37772347), Q(1853020188851841, 1653794703916063)]

U_1_2 = [1, 2, 10, 310, 363010, 594665194510]
U_1_3 = [1, 3, 33, 4785, 118289985, 83574429584465985]
V_1_3 = [1, 3, 21, 861, 1275141, 2551762438701]
V_2_8 = [2, 8, 112, 19936, 588231616, 485180252128302976]


# ---------------------------------------------------------------- orbits


@pytest.mark.parametrize("key", sorted(ORBITS, key=str))
def test_orbit_frozen_values(key):
    name, x0 = key
    expected = ORBITS[key]
    orbit = orbit_exact(builtin_map(name), x0, len(expected) - 1)
    assert list(orbit.terms) == expected
    assert orbit.terms[0] == orbit.x0 == x0


def test_orbit_oracle_closed_form():
    orbit = orbit_exact(ORACLE, Q(1, 2), 3)
    assert list(orbit.terms) == [Q(1, 2), Q(1, 3), Q(1, 4), Q(1, 5)]


def test_orbit_recurrence_invariant():
    orbit = orbit_exact(J, Q(3, 7), 8)
    for i in range(8):
        assert orbit.terms[i + 1] == eval_exact(J, orbit.terms[i])


def test_orbit_size_cap():
    with pytest.raises(SizeLimit):
        orbit_exact(A, Q(1, 2), 26)
    with pytest.warns(UserWarning):
        orbit = orbit_exact(ORACLE, Q(1, 2), 30, allow_large=True)
    assert orbit.terms[-1] == Q(1, 32)


def test_orbit_escape_at_start():
    with pytest.raises(OrbitEscaped) as info:
        orbit_exact(A, Q(3, 2), 4)
    assert info.value.step == 0
    with pytest.raises(OrbitEscaped):
        orbit_exact(I, Q(6, 5), 3)


def test_orbit_pole():
    from abelkit.mapexpr import parse_map_expr
    m = parse_map_expr("x/(1+x+x^2-3*x^3)")
    with pytest.raises(PoleHit):
        orbit_exact(m, 1, 2)


# ------------------------------------------------------------- sequences


def test_t_sequence_from_2():
    assert list(t_sequence(2, 7).terms) == T_FROM_2


def test_t_sequence_from_3():
    assert list(t_sequence(3, 7).terms) == T_FROM_3


def test_t_sequence_third_term_solves_linear_equation():
    # after 2, 2 the next term solves 4 + t = 4t
    assert t_sequence(2, 3).terms[2] == Q(4, 3)


def test_t_sequence_sum_equals_product():
    random.seed(77)
    for _ in range(6):
        t1 = Q(random.randint(2, 9), random.randint(1, 4))
        if t1 == 1:
            continue
        seq = t_sequence(t1, 8)
        total, product = Q(0), Q(1)
        for m, t in enumerate(seq.terms, start=1):
            total += t
            product *= t
            if m >= 2:
                assert total == product


def test_t_sequence_degenerate():
    with pytest.raises(DegenerateStep):
        t_sequence(1, 3)


def test_u_sequence_frozen():
    assert list(u_sequence(1, 2, 6).terms) == U_1_2
    assert list(u_sequence(1, 3, 6).terms) == U_1_3


def test_u_sequence_direct_substitution():
    # 33 = 9 + 27 - 3
    assert u_sequence(1, 3, 3).terms[-1] == 33


def test_u_sequence_non_integral():
    # 2^2 does not divide 3^3
    with pytest.raises(NonIntegralStep):
        u_sequence(2, 3, 3)


def test_v_sequence_frozen():
    assert list(v_sequence(1, 3, 6).terms) == V_1_3
    assert list(v_sequence(2, 8, 6).terms) == V_2_8


def test_v_sequence_direct_substitution():
    # 21 = 9 + 27/2 - 3/2
    assert v_sequence(1, 3, 3).terms[-1] == 21


def test_v_sequence_non_integral():
    with pytest.raises(NonIntegralStep):
        v_sequence(3, 2, 3)


def test_uv_integrality_holds_through_ten_terms():
    # beyond the printed range this is a conjecture check; it must not
    # raise for the known seed pairs
    u = u_sequence(1, 2, 10).terms
    v = v_sequence(1, 3, 10).terms
    assert all(isinstance(x, int) for x in u + v)
    assert u[6] == U_1_2[5] ** 2 + U_1_2[5] ** 3 // U_1_2[4] ** 2 \
        - U_1_2[5] * U_1_2[4] ** 2


# ---------------------------------------------------------------- patterns


def test_patterns_AB_from_half():
    a = orbit_exact(A, Q(1, 2), 5)
    b = orbit_exact(B, Q(1), 5)
    report = check_patterns(a, b, 6)
    assert report.kind == "AB"
    assert report.numerators_match is True
    assert report.A_denominators_power is True
    assert report.B_numerators_are_cumsum_denominators is True
    assert report.I_denominators_are_u_ratios is None
    assert report.all_established()
    assert report.conjecture_consistent == {}


def test_patterns_AB_from_third():
    a = orbit_exact(A, Q(1, 3), 5)
    b = orbit_exact(B, Q(1, 2), 5)
    report = check_patterns(a, b, 6)
    assert report.all_established()
    # denominators 3^(2^i): 3, 9, 81, 6561, 43046721
    assert [t.denominator for t in a.terms[:5]] == [3, 9, 81, 6561, 43046721]


def test_patterns_IJ():
    i = orbit_exact(I, Q(1, 2), 5)
    j = orbit_exact(J, Q(1), 5)
    report = check_patterns(i, j, 6)
    assert report.kind == "IJ"
    assert report.numerators_match is True
    assert report.I_denominators_are_u_ratios is True
    assert report.J_denominators_follow_v is True
    assert report.A_denominators_power is None
    assert report.all_established()


def test_patterns_conjectured_range():
    a = orbit_exact(A, Q(1, 2), 9)
    b = orbit_exact(B, Q(1), 9)
    report = check_patterns(a, b, 10)
    assert report.all_established()
    assert report.conjecture_consistent
    assert all(report.conjecture_consistent.values())

    i = orbit_exact(I, Q(1, 2), 9)
    j = orbit_exact(J, Q(1), 9)
    report = check_patterns(i, j, 10)
    assert report.all_established()
    assert all(report.conjecture_consistent.values())


def test_patterns_detects_mismatch():
    a = orbit_exact(A, Q(1, 2), 5)
    b = orbit_exact(B, Q(1, 2), 5)  # wrong partner: numerators differ
    report = check_patterns(a, b, 6)
    assert report.numerators_match is False


def test_patterns_rejects_bad_pairs():
    a = orbit_exact(A, Q(1, 2), 5)
    j = orbit_exact(J, Q(1), 5)
    with pytest.raises(ValueError):
        check_patterns(a, j, 6)
    with pytest.raises(ValueError):
        check_patterns(a, orbit_exact(B, Q(1), 3), 6)


# ----------------------------------------------------------- reparametrize


def test_reparametrize_B_to_A():
    b = orbit_exact(B, Q(1), 5)
    result = reparametrize(b, "B->A")
    assert result.terms == orbit_exact(A, Q(1, 2), 5).terms
    assert result.map == A


def test_reparametrize_J_to_I():
    j = orbit_exact(J, Q(1), 5)
    assert reparametrize(j, "J->I").terms == orbit_exact(I, Q(1, 2), 5).terms
    j2 = orbit_exact(J, Q(1, 2), 5)
    assert reparametrize(j2, "J->I").terms == orbit_exact(I, Q(1, 3), 5).terms


def test_reparametrize_random_starts():
    random.seed(4242)
    for _ in range(10):
        x0 = Q(random.randint(1, 500), random.randint(100, 200))
        b = orbit_exact(B, x0, 12)
        assert reparametrize(b, "B->A").terms == \
            orbit_exact(A, x0 / (1 + x0), 12).terms
        j = orbit_exact(J, x0, 12)
        assert reparametrize(j, "J->I").terms == \
            orbit_exact(I, x0 / (1 + x0), 12).terms


def test_reparametrize_validates():
    b = orbit_exact(B, Q(1), 4)
    with pytest.raises(ValueError):
        reparametrize(b, "A->B")
    with pytest.raises(ValueError):
        reparametrize(b, "J->I")


# ------------------------------------------------------------------ JSON


def test_orbit_json():
    doc = orbit_to_json(orbit_exact(A, Q(1, 2), 3))
    assert doc["map"] == "A"
    assert doc["x0"] == "1/2"
    assert doc["terms"][2] == {"num": "3", "den": "16"}


def test_rational_terms_json_handles_integers():
    assert rational_terms_json([1, Q(2, 3)]) == [
        {"num": "1", "den": "1"}, {"num": "2", "den": "3"}]


def test_pattern_report_json():
    a = orbit_exact(A, Q(1, 2), 5)
    b = orbit_exact(B, Q(1), 5)
    doc = pattern_report_to_json(check_patterns(a, b, 6))
    assert doc["kind"] == "AB"
    assert doc["numerators_match"] is True
    assert "I_denominators_are_u_ratios" not in doc
