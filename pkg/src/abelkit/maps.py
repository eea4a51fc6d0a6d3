"""Rational self-maps tangent to the identity, and their local invariants.

A map is f(x) = p(x)/q(x) with exact rational coefficients, normalized so
that q(0) = 1, and subject to the canonical-form checks

    f(0) = 0,   f'(0) = 1,   [x^2] f = -1.

The registry exposes the named built-ins:

    A       x*(1-x)                 on (0, 1)
    B       x/(1+x+x^2)             on (0, inf)
    I       x/(1+x-x^2)             on (0, 1)
    J       x*(1+x)/(1+2*x)         on (0, inf)
    ORACLE  x/(1+x)                 on (0, inf); Abel solution is exactly 1/x
    CUBIC_PLUS   x/(1+x+x^3)        on (0, inf)
    CUBIC_MINUS  x/(1+x-x^3)        on (0, 1)
    HIGHER(l,+)  x/(1+x+x^(l+1))    on (0, inf), integer l >= 2
    HIGHER(l,-)  x/(1+x-x^(l+1))    on (0, 1)

Every map here sends its domain into itself with 0 < f(x) < x, so orbits
decrease to 0 and the Abel equation F(f(x)) = F(x) + 1 has a convex
principal solution.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Optional

import mpmath

from .errors import (
    DivisionByZeroPolynomial,
    NotCanonical,
    NotTangentToIdentity,
    PoleHit,
    UnknownMap,
)
from .polys import PolyQ, poly_gcd


class MapSpec:
    """A rational map p(x)/q(x) in reduced form with q(0) = 1.

    Equality and hashing use only the coefficient data, so a parsed
    expression equal to a built-in compares equal to it regardless of name.
    `domain_sup` is the right endpoint of the map's invariant interval
    (None meaning +infinity); orbits are confined to (0, domain_sup).
    """

    __slots__ = ("name", "num", "den", "domain_sup")

    def __init__(self, name: str, num: PolyQ, den: PolyQ,
                 domain_sup: Optional[Fraction] = None):
        num, den = _reduce_fraction(num, den)
        if not num or num[0] != 0:
            raise NotTangentToIdentity("map must satisfy f(0) = 0")
        if num[1] != 1:
            raise NotTangentToIdentity("map must satisfy f'(0) = 1")
        a2 = _taylor_coeff2(num, den)
        if a2 != -1:
            raise NotCanonical(
                f"x^2 coefficient is {a2}, expected -1; rescale the variable first")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "domain_sup",
                           None if domain_sup is None else Fraction(domain_sup))

    def __setattr__(self, name, value):
        raise AttributeError("MapSpec is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapSpec):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"MapSpec({self.name!r}, {render_map(self)!r})"

    def integer_coeffs(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Numerator/denominator coefficients scaled to a common integer form."""
        dens = [c.denominator for c in self.num.coeffs]
        dens += [c.denominator for c in self.den.coeffs]
        m = lcm(*dens) if dens else 1
        pc = tuple(int(c * m) for c in self.num.coeffs)
        qc = tuple(int(c * m) for c in self.den.coeffs)
        return pc, qc

    def contains(self, x: Fraction) -> bool:
        """Exact domain membership test for a rational point."""
        if x <= 0:
            return False
        if self.domain_sup is not None and x >= self.domain_sup:
            return False
        return True


def _reduce_fraction(num: PolyQ, den: PolyQ) -> tuple[PolyQ, PolyQ]:
    """Cancel the polynomial gcd and normalize q(0) = 1."""
    if not den:
        raise DivisionByZeroPolynomial("denominator is the zero polynomial")
    g = poly_gcd(num, den)
    if g and g.degree > 0:
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
    q0 = den[0]
    if q0 == 0:
        # pole at the origin: cannot be tangent to the identity
        raise NotTangentToIdentity("map must be finite at 0 with f(0) = 0")
    num = num * (1 / q0)
    den = den * (1 / q0)
    return num, den


def _taylor_coeff2(num: PolyQ, den: PolyQ) -> Fraction:
    # [x^2] of p/q with q(0)=1: series division to order 2.
    a0 = num[0]
    a1 = num[1] - den[1] * a0
    return num[2] - den[1] * a1 - den[2] * a0


def taylor(m: MapSpec, order: int) -> list[Fraction]:
    """Taylor coefficients of f at 0 through x^order (exact series division)."""
    if order < 0:
        raise ValueError("order must be >= 0")
    out: list[Fraction] = []
    for i in range(order + 1):
        c = m.num[i]
        for j in range(1, i + 1):
            c -= m.den[j] * out[i - j]
        out.append(c)
    return out


class CanonicalForm:
    """Coefficients of 1/f(1/w) = w + 1 + sum_j c_j w^-j."""

    __slots__ = ("b1", "coefficients")

    def __init__(self, b1: Fraction, coefficients: tuple[Fraction, ...]):
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "coefficients", coefficients)

    def __setattr__(self, name, value):
        raise AttributeError("CanonicalForm is immutable")

    def __repr__(self) -> str:
        return f"CanonicalForm(b1={self.b1}, c={list(self.coefficients)})"


def canonical_form(m: MapSpec, j_terms: int) -> CanonicalForm:
    """Expand 1/f(1/w) = w + 1 + c_1/w + ... + c_J/w^J exactly.

    Writing p(x) = x*P(x) and t = 1/w, the expansion coefficients are those
    of the power series d(t) = q(t)/P(t): the constant shift is d_1 (checked
    to equal 1) and c_j = d_(j+1). The result is verified by multiplying
    back: q(t) - d(t)*P(t) must vanish through the computed order.
    """
    if j_terms < 0:
        raise ValueError("j_terms must be >= 0")
    # P(t) = p(t)/t, constant term 1
    big_p = PolyQ(m.num.coeffs[1:])
    order = max(j_terms + 1, 2)
    d: list[Fraction] = []
    for i in range(order + 1):
        c = m.den[i]
        for a in range(1, i + 1):
            c -= big_p[a] * d[i - a]
        d.append(c)
    if d[0] != 1 or d[1] != 1:
        # d[0] = q(0)/P(0) = 1 always; d[1] = 1 iff the x^2 coefficient is -1
        raise NotCanonical("canonical additive form requires constant shift 1")
    # independent back-substitution check (multiplication, not division)
    prod = PolyQ(d) * big_p
    for i in range(order + 1):
        if prod[i] != m.den[i]:
            raise AssertionError("canonical form back-substitution failed")
    coeffs = tuple(d[j + 1] for j in range(1, j_terms + 1))
    return CanonicalForm(b1=d[2], coefficients=coeffs)


def eval_exact(m: MapSpec, x: Fraction) -> Fraction:
    """One exact application of the map at a rational point."""
    x = Fraction(x)
    q = m.den.eval(x)
    if q == 0:
        raise PoleHit(f"denominator vanishes at {x}")
    return m.num.eval(x) / q


def eval_real(m: MapSpec, x, prec: int):
    """One application of the map in binary floating point at `prec` bits."""
    with mpmath.workprec(prec):
        xf = mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) \
            else mpmath.mpf(x)
        q = m.den.eval(xf)
        if q == 0:
            raise PoleHit(f"denominator vanishes at {x}")
        return m.num.eval(xf) / q


def _poly_lines(p: PolyQ, var: str = "x") -> str:
    """Render a polynomial as a parseable expression string."""
    if not p:
        return "0"
    parts: list[str] = []
    for d, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if d == 0:
            body = _frac_expr(mag)
        else:
            pw = var if d == 1 else f"{var}^{d}"
            body = pw if mag == 1 else f"{_frac_expr(mag)}*{pw}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _frac_expr(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_map(m: MapSpec) -> str:
    """Expression text that parses back to an equal map."""
    # built-ins may carry rational coefficients only through normalization;
    # clear denominators so the rendered text stays integer and tidy
    pc, qc = m.integer_coeffs()
    p = PolyQ(pc)
    q = PolyQ(qc)
    if q.degree == 0 and q[0] == 1:
        return _poly_lines(p)
    left = _poly_lines(p)
    if p.degree > 0 and len([c for c in p.coeffs if c]) > 1:
        left = f"({left})"
    return f"{left}/({_poly_lines(q)})"


def higher_map(ell: int, sign: int) -> MapSpec:
    """The map x/(1 + x + s*x^(l+1)) with s = +-1, for integer l >= 2."""
    if ell < 2:
        raise ValueError(
            "higher_map requires l >= 2; the l = 1 cases are the built-ins B and I")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return _additive_conjugate(ell, sign)


def _additive_conjugate(ell: int, sign: int) -> MapSpec:
    """x/(1 + x + s*x^(l+1)) for l >= 1; conjugate of x -> x + 1 + s/x^l."""
    if ell < 1 or sign not in (1, -1):
        raise ValueError("need integer l >= 1 and sign +-1")
    if ell == 1:
        return builtin_map("B" if sign > 0 else "I")
    q = [1, 1] + [0] * (ell - 1) + [sign]
    sup = None if sign > 0 else Fraction(1)
    tag = "+" if sign > 0 else "-"
    name = {2: "CUBIC_PLUS" if sign > 0 else "CUBIC_MINUS"}.get(
        ell, f"HIGHER({ell},{tag})")
    return MapSpec(name, PolyQ((0, 1)), PolyQ(q), domain_sup=sup)


def _registry() -> dict[str, MapSpec]:
    x = PolyQ((0, 1))
    return {
        "A": MapSpec("A", PolyQ((0, 1, -1)), PolyQ((1,)), domain_sup=Fraction(1)),
        "B": MapSpec("B", x, PolyQ((1, 1, 1)), domain_sup=None),
        "I": MapSpec("I", x, PolyQ((1, 1, -1)), domain_sup=Fraction(1)),
        "J": MapSpec("J", PolyQ((0, 1, 1)), PolyQ((1, 2)), domain_sup=None),
        "ORACLE": MapSpec("ORACLE", x, PolyQ((1, 1)), domain_sup=None),
        "CUBIC_PLUS": _additive_conjugate(2, 1),
        "CUBIC_MINUS": _additive_conjugate(2, -1),
    }


_BUILTINS = _registry()
_HIGHER_RE = re.compile(r"^HIGHER\(\s*(\d+)\s*,\s*([+-]1?)\s*\)$")


def builtin_map(name: str) -> MapSpec:
    """Look up a named built-in; supports 'HIGHER(l,+)' and 'HIGHER(l,-)'."""
    key = name.strip()
    if key in _BUILTINS:
        return _BUILTINS[key]
    m = _HIGHER_RE.match(key)
    if m:
        ell = int(m.group(1))
        sign = 1 if m.group(2).startswith("+") else -1
        try:
            return higher_map(ell, sign)
        except ValueError as exc:
            raise UnknownMap(str(exc)) from None
    raise UnknownMap(f"no built-in map named {name!r}")


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTINS)
