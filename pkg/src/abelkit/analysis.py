"""Function-level studies of Abel solutions.

Identity checks between paired maps, convexity/monotonicity scans on
rational grids, bisection for minima and inflection points via central
differences of the computed constants, and CSV grid emission.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import mpmath

from .constants import _min_precision, estimate_constant
from .errors import (
    AmbiguousRoot,
    InfeasibleParameters,
    NewtonDiverged,
    NoSignChange,
    OrbitEscaped,
    PoleHit,
    ValidationFailed,
)
from .logseries import map_label
from .maps import MapSpec, builtin_map, eval_exact
from .numfmt import agreeing_digits, mpf_to_fraction, truncate_decimal


def golden_ratio(precision: int = 53) -> mpmath.mpf:
    """(1 + sqrt(5))/2 at the requested bit precision."""
    with mpmath.workprec(precision):
        return (1 + mpmath.sqrt(5)) / 2


@lru_cache(maxsize=None)
def _abel_value(m: MapSpec, x0: Fraction, digits: int) -> mpmath.mpf:
    return estimate_constant(m, x0, digits).value


@lru_cache(maxsize=None)
def _abel_exact(m: MapSpec, x0: Fraction, digits: int) -> Fraction:
    """Computed constant as an exact dyadic rational.

    Differences of constants can be far smaller than the constants
    themselves; taking them in Fraction arithmetic avoids losing the
    signal to the ambient float context.
    """
    return mpf_to_fraction(_abel_value(m, x0, digits))


@dataclass(frozen=True)
class IdentityReport:
    """Agreement between C_first(x/(1+x)) and C_second(x) + 1."""

    pair: str
    x: Fraction
    left: mpmath.mpf
    right: mpmath.mpf
    digits: int
    digits_agreed: int
    passed: bool


_IDENTITY_PAIRS = {"AB": ("A", "B"), "IJ": ("I", "J")}


def verify_identity(pair: str, x, digits: int) -> IdentityReport:
    """Check C_first(x/(1+x)) = C_second(x) + 1 to at least digits-3 places.

    pair is "AB" (first map x(1-x), second x/(1+x+x^2)) or "IJ"
    (first x/(1+x-x^2), second x(1+x)/(1+2x)).
    """
    if pair not in _IDENTITY_PAIRS:
        raise ValueError(f"pair must be one of {sorted(_IDENTITY_PAIRS)}")
    x = Fraction(x)
    if x <= 0:
        raise ValueError("x must be positive")
    first, second = (builtin_map(n) for n in _IDENTITY_PAIRS[pair])
    left = _abel_value(first, x / (1 + x), digits)
    with mpmath.workprec(_min_precision(digits)):
        right = _abel_value(second, x, digits) + 1
    agreed = agreeing_digits(left, right, cap=digits + 40)
    return IdentityReport(pair=pair, x=x, left=left, right=right,
                          digits=digits, digits_agreed=agreed,
                          passed=agreed >= digits - 3)


def identity_report_to_json(report: IdentityReport) -> dict:
    return {
        "pair": report.pair,
        "x": str(report.x),
        "left": truncate_decimal(report.left, report.digits),
        "right": truncate_decimal(report.right, report.digits),
        "digits": report.digits,
        "digits_agreed": report.digits_agreed,
        "passed": report.passed,
    }


# ------------------------------------------------------------------ grids


def _uniform_grid(a: Fraction, b: Fraction, points: int):
    step = (b - a) / (points - 1)
    return [a + i * step for i in range(points)]


def _check_range(m: MapSpec, a: Fraction, b: Fraction, points: int):
    if points < 5:
        raise ValueError("points must be >= 5")
    if a >= b:
        raise ValueError("need a < b")
    if a <= 0:
        raise ValueError("grid must stay above 0")
    if m.domain_sup is not None and b >= m.domain_sup:
        raise ValueError(
            f"grid must stay below {m.domain_sup} for this map")


@dataclass(frozen=True)
class ShapeReport:
    """Sign structure of a sampled Abel solution on [a, b]."""

    map: MapSpec
    abscissae: tuple
    values: tuple
    monotonicity: str          # increasing / decreasing / mixed
    convexity: str             # convex / concave / mixed
    turning_points: tuple      # brackets (x_lo, x_hi) of slope sign changes
    digits: int


def scan_shape(m: MapSpec, a, b, points: int, digits: int) -> ShapeReport:
    """Sample the Abel solution uniformly and classify its shape.

    Reports monotonicity from first differences, convexity from second
    central differences, and brackets around slope sign changes.
    """
    a, b = Fraction(a), Fraction(b)
    _check_range(m, a, b, points)
    xs = _uniform_grid(a, b, points)
    vs = [_abel_value(m, x, digits) for x in xs]
    exact = [mpf_to_fraction(v) for v in vs]
    first = [exact[i + 1] - exact[i] for i in range(points - 1)]
    second = [exact[i + 1] - 2 * exact[i] + exact[i - 1]
              for i in range(1, points - 1)]

    def classify(diffs, pos, neg):
        if all(d > 0 for d in diffs):
            return pos
        if all(d < 0 for d in diffs):
            return neg
        return "mixed"

    turns = []
    for i in range(len(first) - 1):
        if first[i] < 0 <= first[i + 1] or first[i] > 0 >= first[i + 1]:
            turns.append((xs[i], xs[i + 2]))
    return ShapeReport(
        map=m, abscissae=tuple(xs), values=tuple(vs),
        monotonicity=classify(first, "increasing", "decreasing"),
        convexity=classify(second, "convex", "concave"),
        turning_points=tuple(turns), digits=digits)


def shape_report_to_json(report: ShapeReport) -> dict:
    return {
        "map": map_label(report.map),
        "a": str(report.abscissae[0]),
        "b": str(report.abscissae[-1]),
        "points": len(report.abscissae),
        "digits": report.digits,
        "monotonicity": report.monotonicity,
        "convexity": report.convexity,
        "turning_points": [[str(lo), str(hi)]
                           for lo, hi in report.turning_points],
    }


# ------------------------------------------------------ critical points


@dataclass(frozen=True)
class CriticalPointResult:
    """A bisection-located critical point of an Abel solution."""

    location: Fraction
    value: Optional[mpmath.mpf]
    kind: str                  # minimum / inflection
    bracket: tuple             # (lo, hi) rationals with a sign change
    digits: int                # fractional digits the location resolves


def critical_point_to_json(result: CriticalPointResult,
                           value_digits: int) -> dict:
    return {
        "kind": result.kind,
        "location": truncate_decimal(result.location, result.digits),
        "bracket": [str(result.bracket[0]), str(result.bracket[1])],
        "value": None if result.value is None
        else truncate_decimal(result.value, value_digits),
        "location_digits": result.digits,
    }


def _bisect(sign_at, lo: Fraction, hi: Fraction, width: Fraction, label):
    s_lo, s_hi = sign_at(lo), sign_at(hi)
    if s_lo == 0:
        return lo, lo
    if s_hi == 0:
        return hi, hi
    if s_lo == s_hi:
        raise NoSignChange(
            f"no {label} sign change on [{lo}, {hi}] "
            f"(signs {s_lo:+d}, {s_hi:+d})")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s_mid = sign_at(mid)
        if s_mid == 0:
            return mid, mid
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _sign(v) -> int:
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


def _steps(m: MapSpec, lo: Fraction, hi: Fraction, digits: int):
    h = Fraction(1, 10 ** math.ceil(digits / 3))
    loc_digits = min(digits // 2, 12)
    width = Fraction(1, 10 ** loc_digits)
    if lo - h <= 0:
        raise ValueError("bracket too close to 0 for the difference step")
    if m.domain_sup is not None and hi + h >= m.domain_sup:
        raise ValueError(
            f"bracket too close to {m.domain_sup} for the difference step")
    if lo >= hi:
        raise ValueError("need lo < hi")
    return h, loc_digits, width


def find_minimum(m: MapSpec, bracket, digits: int) -> CriticalPointResult:
    """Locate a minimum of the Abel solution by bisecting its slope sign.

    The slope sign at x is sign(C(x+h) - C(x-h)) with h = 10^-ceil(D/3);
    bisection narrows to width 10^-min(D//2, 12).  NoSignChange when the
    slope does not pass from negative to positive across the bracket.
    """
    lo, hi = (Fraction(v) for v in bracket)
    h, loc_digits, width = _steps(m, lo, hi, digits)

    def slope_sign(x: Fraction) -> int:
        return _sign(_abel_exact(m, x + h, digits)
                     - _abel_exact(m, x - h, digits))

    if slope_sign(lo) > 0 or slope_sign(hi) < 0:
        raise NoSignChange(
            f"slope does not pass - to + across [{lo}, {hi}]; "
            f"no minimum bracketed")
    blo, bhi = _bisect(slope_sign, lo, hi, width, "slope")
    location = (blo + bhi) / 2
    return CriticalPointResult(
        location=location, value=_abel_value(m, location, digits),
        kind="minimum", bracket=(blo, bhi), digits=loc_digits)


def find_inflection(m: MapSpec, bracket, digits: int,
                    of: str = "abel") -> CriticalPointResult:
    """Locate an inflection point by bisecting the second-difference sign.

    of="abel" examines the Abel solution (the default); of="map" examines
    the map itself using exact rational arithmetic (noise-free signs).
    """
    if of not in ("abel", "map"):
        raise ValueError('of must be "abel" or "map"')
    lo, hi = (Fraction(v) for v in bracket)
    h, loc_digits, width = _steps(m, lo, hi, digits)

    if of == "map":
        def curvature_sign(x: Fraction) -> int:
            return _sign(eval_exact(m, x + h) - 2 * eval_exact(m, x)
                         + eval_exact(m, x - h))
    else:
        def curvature_sign(x: Fraction) -> int:
            return _sign(_abel_exact(m, x + h, digits)
                         - 2 * _abel_exact(m, x, digits)
                         + _abel_exact(m, x - h, digits))

    blo, bhi = _bisect(curvature_sign, lo, hi, width, "curvature")
    location = (blo + bhi) / 2
    value = None if of == "map" else _abel_value(m, location, digits)
    return CriticalPointResult(
        location=location, value=value, kind="inflection",
        bracket=(blo, bhi), digits=loc_digits)


# -------------------------------------------------------------- grid CSV


@dataclass(frozen=True)
class GridSample:
    """Abel constants on a uniform rational grid, with per-point status."""

    map: MapSpec
    abscissae: tuple
    values: tuple              # mpf or None per point
    statuses: tuple            # ok / escaped / failed per point
    digits: int


def grid_csv(m: MapSpec, a, b, points: int, digits: int) -> GridSample:
    """Estimate the Abel constant at each point of a uniform grid.

    Per-point failures are recorded in the sample's status column rather
    than raised.
    """
    a, b = Fraction(a), Fraction(b)
    _check_range(m, a, b, points)
    xs = _uniform_grid(a, b, points)
    values, statuses = [], []
    for x in xs:
        try:
            values.append(_abel_value(m, x, digits))
            statuses.append("ok")
        except OrbitEscaped:
            values.append(None)
            statuses.append("escaped")
        except (ValidationFailed, NewtonDiverged, AmbiguousRoot,
                PoleHit, InfeasibleParameters):
            values.append(None)
            statuses.append("failed")
    return GridSample(map=m, abscissae=tuple(xs), values=tuple(values),
                      statuses=tuple(statuses), digits=digits)


def grid_to_csv(sample: GridSample) -> str:
    """Render a GridSample as CSV with header x,value,status,digits."""
    lines = ["x,value,status,digits"]
    for x, v, status in zip(sample.abscissae, sample.values,
                            sample.statuses):
        value = "" if v is None else truncate_decimal(v, sample.digits)
        digits = "" if v is None else str(sample.digits)
        lines.append(f"{truncate_decimal(x, sample.digits)},{value},"
                     f"{status},{digits}")
    return "\n".join(lines) + "\n"
