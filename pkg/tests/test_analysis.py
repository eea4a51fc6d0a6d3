"""Tests for identity verification, shape scans, and critical points."""

from fractions import Fraction as Q

import mpmath
import pytest

from abelkit.analysis import (
    critical_point_to_json,
    find_inflection,
    find_minimum,
    golden_ratio,
    grid_csv,
    grid_to_csv,
    identity_report_to_json,
    scan_shape,
    shape_report_to_json,
    verify_identity,
)
from abelkit.errors import NoSignChange
from abelkit.mapexpr import parse_map_expr
from abelkit.maps import builtin_map
from abelkit.numfmt import mpf_to_fraction, truncate_decimal

A = builtin_map("A")
B = builtin_map("B")
I = builtin_map("I")
J = builtin_map("J")
ORACLE = builtin_map("ORACLE")
CUBIC_PLUS = builtin_map("CUBIC_PLUS")


# ------------------------------------------------------------- identities


def test_identity_AB_at_one():
    report = verify_identity("AB", 1, 30)
    assert report.passed
    assert report.digits_agreed >= 27
    # A(1/2) and B(1)+1 share the fractional digits .767993786136154
    assert truncate_decimal(report.left, 15) == "1.767993786136154"


def test_identity_IJ_at_three():
    report = verify_identity("IJ", 3, 25)
    assert report.passed
    # I(3/4) is negative: -0.470371715082998...
    assert truncate_decimal(report.left, 12) == "-0.470371715082"


def test_identity_IJ_at_two_links_printed_pair():
    # I(2/3) = J(2) + 1 relates the two printed negative/positive values
    report = verify_identity("IJ", 2, 25)
    assert report.passed
    assert truncate_decimal(report.left, 15) == "0.242366454694211"
    # J(2) = -0.7576335453057889...; truncation keeps ...788
    assert truncate_decimal(mpf_to_fraction(report.right) - 1, 15) == \
        "-0.757633545305788"


def test_identity_validation():
    with pytest.raises(ValueError):
        verify_identity("XY", 1, 20)
    with pytest.raises(ValueError):
        verify_identity("AB", -1, 20)


def test_identity_json():
    doc = identity_report_to_json(verify_identity("AB", 2, 20))
    assert doc["pair"] == "AB"
    assert doc["x"] == "2"
    assert doc["passed"] is True
    assert doc["digits_agreed"] >= 17


# ------------------------------------------------------------------ scans


def test_scan_A_convex_with_turn_at_half():
    report = scan_shape(A, Q(1, 10), Q(9, 10), 17, 30)
    assert report.convexity == "convex"
    assert report.monotonicity == "mixed"
    assert len(report.turning_points) == 1
    lo, hi = report.turning_points[0]
    assert lo < Q(1, 2) < hi


def test_scan_I_concave_right_of_inflection():
    report = scan_shape(I, Q(7, 10), Q(19, 20), 11, 30)
    assert report.convexity == "concave"


def test_scan_J_decreasing_convex():
    report = scan_shape(J, Q(1, 2), 4, 15, 30)
    assert report.monotonicity == "decreasing"
    assert report.convexity == "convex"
    assert report.turning_points == ()


def test_scan_oracle():
    report = scan_shape(ORACLE, Q(1, 10), 2, 5, 20)
    assert report.monotonicity == "decreasing"
    assert report.convexity == "convex"


def test_scan_validation():
    with pytest.raises(ValueError):
        scan_shape(A, Q(1, 10), Q(9, 10), 4, 20)
    with pytest.raises(ValueError):
        scan_shape(I, Q(1, 2), Q(6, 5), 5, 20)  # beyond I's domain
    with pytest.raises(ValueError):
        scan_shape(B, Q(1, 2), Q(1, 4), 5, 20)


def test_scan_json():
    doc = shape_report_to_json(scan_shape(ORACLE, Q(1, 10), 2, 5, 20))
    assert doc["monotonicity"] == "decreasing"
    assert doc["points"] == 5


# --------------------------------------------------------------- minimum


def test_minimum_B_at_one():
    result = find_minimum(B, (Q(1, 2), 2), 30)
    assert result.kind == "minimum"
    assert abs(result.location - 1) < Q(1, 10 ** 9)
    assert truncate_decimal(result.value, 15) == "0.767993786136154"
    assert result.digits == 12
    lo, hi = result.bracket
    assert hi - lo <= Q(1, 10 ** 12)


def test_minimum_A_at_half():
    result = find_minimum(A, (Q(1, 4), Q(3, 4)), 30)
    assert abs(result.location - Q(1, 2)) < Q(1, 10 ** 10)
    assert truncate_decimal(result.value, 15) == "1.767993786136154"


def test_minimum_cubic_plus_at_cube_root():
    result = find_minimum(CUBIC_PLUS, (Q(1, 2), 1), 20)
    with mpmath.workprec(100):
        target = mpmath.mpf(2) ** (-mpmath.mpf(1) / 3)
        assert abs(mpf_to_fraction(target) - result.location) < Q(1, 10 ** 8)
    assert truncate_decimal(result.value, 15) == "2.286858220891602"


def test_minimum_requires_sign_change():
    with pytest.raises(NoSignChange):
        find_minimum(J, (Q(1, 2), 2), 20)


def test_minimum_bracket_validation():
    with pytest.raises(ValueError):
        find_minimum(B, (2, Q(1, 2)), 20)
    with pytest.raises(ValueError):
        find_minimum(A, (Q(1, 4), Q(9999999, 10000000)), 20)


# ------------------------------------------------------------- inflection


def test_inflection_of_I_abel_solution():
    result = find_inflection(I, (Q(1, 2), Q(7, 10)), 30)
    assert result.kind == "inflection"
    assert Q(6285, 10000) <= result.location <= Q(6295, 10000)
    lo, hi = result.bracket
    assert hi - lo <= Q(1, 10 ** 12)


def test_inflection_of_raw_map():
    # exact-arithmetic variant: the map itself has an inflection where
    # x^3 + 3x - 1 = 0, at 0.32218...
    result = find_inflection(I, (Q(1, 4), Q(1, 2)), 20, of="map")
    root = result.location
    assert abs(root ** 3 + 3 * root - 1) < Q(1, 10 ** 8)
    assert abs(root - Q(322185, 1000000)) < Q(1, 1000)
    assert result.value is None


def test_inflection_no_sign_change_for_B():
    with pytest.raises(NoSignChange):
        find_inflection(B, (Q(1, 2), 2), 20)


def test_critical_point_json():
    result = find_inflection(I, (Q(1, 4), Q(1, 2)), 20, of="map")
    doc = critical_point_to_json(result, 15)
    assert doc["kind"] == "inflection"
    assert doc["value"] is None
    assert doc["location"].startswith("0.322185")


# ------------------------------------------------------------------ grid


def test_grid_oracle_exact():
    sample = grid_csv(ORACLE, Q(1, 10), 2, 5, 20)
    assert sample.statuses == ("ok",) * 5
    for x, v in zip(sample.abscissae, sample.values):
        with mpmath.workprec(300):
            ref = mpmath.mpf(x.denominator) / x.numerator
            assert abs(v - ref) < mpmath.mpf(10) ** -22


def test_grid_csv_text():
    text = grid_to_csv(grid_csv(ORACLE, Q(1, 10), 2, 5, 20))
    lines = text.strip().split("\n")
    assert lines[0] == "x,value,status,digits"
    assert len(lines) == 6
    first = lines[1].split(",")
    assert first[0] == "0.10000000000000000000"
    # C(1/10) = 10 exactly; the estimate may sit a hair either side
    assert first[1] in ("10.00000000000000000000",
                        "9.99999999999999999999")
    assert first[2] == "ok"


def test_grid_A_profile():
    sample = grid_csv(A, Q(1, 20), Q(19, 20), 19, 20)
    assert sample.statuses == ("ok",) * 19
    values = list(sample.values)
    mid = values.index(min(values))
    assert sample.abscissae[mid] == Q(1, 2)


def test_grid_abel_property_spot_check():
    # grid contains both 1/3 and 1 = f^-1(1/3) for B
    sample = grid_csv(B, Q(1, 3), Q(5, 3), 5, 20)
    idx = {x: i for i, x in enumerate(sample.abscissae)}
    c_third = sample.values[idx[Q(1, 3)]]
    c_one = sample.values[idx[Q(1)]]
    assert abs(c_third - c_one - 1) < mpmath.mpf(10) ** -18


def test_grid_records_failures():
    # map with a pole at x = 1 and negative denominator beyond it
    m = parse_map_expr("x/(1+x-2*x^2)")
    sample = grid_csv(m, 1, Q(5, 4), 5, 15)
    assert sample.statuses[0] == "failed"      # exact pole at x = 1
    assert set(sample.statuses[1:]) == {"escaped"}
    text = grid_to_csv(sample)
    assert ",failed," in text and ",escaped," in text


# ------------------------------------------------------------- constants


def test_golden_ratio_value():
    phi = golden_ratio(200)
    with mpmath.workprec(200):
        assert abs(phi * phi - phi - 1) < mpmath.mpf(2) ** -190
