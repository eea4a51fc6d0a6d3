"""Decimal formatting and digit-agreement helpers.

All printing of high-precision values goes through truncate_decimal so that
output shows the true leading digits (truncation toward zero, no rounding).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def mpf_to_fraction(v) -> Fraction:
    """Exact rational value of an mpf (every finite mpf is dyadic).

    Reads the raw mantissa directly: passing the value through the mpf
    constructor would silently re-round it to the ambient precision.
    """
    raw = getattr(v, "_mpf_", None)
    if raw is None:
        return Fraction(v)
    sign, man, exp, _ = raw
    if man == 0:
        if raw != mpmath.libmp.fzero:
            raise ValueError(f"not a finite value: {v}")
        return Fraction(0)
    f = Fraction(man) * (Fraction(2) ** exp)
    return -f if sign else f


def truncate_decimal(v, digits: int) -> str:
    """Decimal string of `v` with exactly `digits` fractional digits.

    Truncates toward zero, so the printed digits are the true leading
    digits of the value.  `v` may be an mpf, int, or Fraction.
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    f = v if isinstance(v, Fraction) else (
        Fraction(v) if isinstance(v, int) else mpf_to_fraction(v))
    neg = f < 0
    scaled = -f if neg else f
    units = int(scaled * 10 ** digits)  # floor, scaled is >= 0
    whole, frac = divmod(units, 10 ** digits)
    body = str(whole)
    if digits:
        body += "." + str(frac).zfill(digits)
    return "-" + body if neg else body


def agreeing_digits(a, b, cap: int = 10_000) -> int:
    """Number of agreeing fractional decimal digits: floor(-log10 |a - b|).

    Returns `cap` when the values are identical. Negative when the values
    differ before the decimal point.
    """
    fa = a if isinstance(a, Fraction) else mpf_to_fraction(a)
    fb = b if isinstance(b, Fraction) else mpf_to_fraction(b)
    diff = abs(fa - fb)
    if diff == 0:
        return cap
    count = 0
    if diff < 1:
        while diff < 1 and count < cap:
            diff *= 10
            count += 1
        return min(count - 1, cap)
    while diff >= 1 and count > -cap:
        diff /= 10
        count -= 1
    return count


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', an integer, or a plain decimal, as an exact Fraction."""
    s = text.strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc
