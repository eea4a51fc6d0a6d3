"""Exact power-logarithmic expansions for orbits of canonical rational maps.

For a map f tangent to the identity with [x^2] f = -1, orbits x_{n+1} =
f(x_n) decreasing to 0 admit an asymptotic expansion

    x_n ~ sum_{m=0}^{k-1} P_m(X) / n^(m+1),    X = -b1*ln(n) - C,

where b1 is the leading canonical coefficient of 1/f(1/w) - w - 1, C is the
orbit's Abel constant, and each P_m is a monic degree-m polynomial with
rational coefficients (P_0 = 1 and P_1 = X, the zero constant term of P_1
being the normalization that fixes C).

Everything in this module is exact: coefficients live in Q via Fraction,
and series manipulation happens in the truncated algebra Q[X][[1/n]]. The
derivation proceeds order by order: if the series is correct through
P_{j-1}, substituting it into x_{n+1} = f(x_n) leaves a defect
rho(X)/n^(j+2), and the next polynomial is the unique solution of the
triangular linear equation (j-1)*u + b1*u' = -rho (integrated with zero
constant term at j = 1). `residual` re-substitutes a finished expansion
and returns the defect coefficients, which must all vanish; it is the
independent check on the derivation.

The w-side (reciprocal) form

    1/x_n = n + b1*ln(n) + C + sum_{m>=1} R_m(L, C)/n^m,   L = ln(n),

is produced by `reciprocal`, and `additive_wseries` specializes it to the
additive recurrences x_{n+1} = x_n + 1 + s/x_n^l via the exact conjugacy
with the map y/(1 + y + s*y^(l+1)).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import AbelkitError
from .maps import (
    MapSpec,
    _additive_conjugate,
    builtin_map,
    builtin_names,
    canonical_form,
    render_map,
)
from .mapexpr import parse_map_expr
from .polys import BivarPolyQ, PolyQ, poly_from_strings, poly_to_strings

_ZERO = PolyQ()
_ONE = PolyQ((1,))
_X = PolyQ((0, 1))


# --------------------------------------------------------------------------
# truncated series algebra: element = list of PolyQ, index = power of 1/n
# --------------------------------------------------------------------------

def _padded(polys: list[PolyQ], m_order: int) -> list[PolyQ]:
    out = list(polys[: m_order + 1])
    out.extend([_ZERO] * (m_order + 1 - len(out)))
    return out


def _add(a: list[PolyQ], b: list[PolyQ]) -> list[PolyQ]:
    return [x + y for x, y in zip(a, b)]


def _sub(a: list[PolyQ], b: list[PolyQ]) -> list[PolyQ]:
    return [x - y for x, y in zip(a, b)]


def _mul(a: list[PolyQ], b: list[PolyQ], m_order: int) -> list[PolyQ]:
    out = [_ZERO] * (m_order + 1)
    for i, ai in enumerate(a):
        if not ai or i > m_order:
            continue
        top = m_order - i
        for j, bj in enumerate(b):
            if j > top:
                break
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _mul_scalar_series(a: list[PolyQ], s: list[Fraction], m_order: int) -> list[PolyQ]:
    out = [_ZERO] * (m_order + 1)
    for i, ai in enumerate(a):
        if not ai or i > m_order:
            continue
        top = m_order - i
        for j, sj in enumerate(s):
            if j > top:
                break
            if sj:
                out[i + j] = out[i + j] + ai * sj
    return out


def _invert_one_plus(w: list[PolyQ], m_order: int) -> list[PolyQ]:
    """Inverse series of 1 + w where w has zero constant term."""
    if w[0]:
        raise AssertionError("inversion requires zero constant term")
    inv = [_ZERO] * (m_order + 1)
    inv[0] = _ONE
    for i in range(1, m_order + 1):
        acc = _ZERO
        for a in range(1, i + 1):
            if w[a]:
                acc = acc + w[a] * inv[i - a]
        inv[i] = -acc
    return inv


def _apply_map(s: list[PolyQ], m: MapSpec, m_order: int) -> list[PolyQ]:
    """Series of f(S) for the rational map f = p/q (q(0) = 1)."""
    def poly_at_series(p: PolyQ) -> list[PolyQ]:
        acc = [_ZERO] * (m_order + 1)
        for c in reversed(p.coeffs):
            acc = _mul(acc, s, m_order)
            acc[0] = acc[0] + PolyQ.const(c)
        return acc

    num = poly_at_series(m.num)
    den = poly_at_series(m.den)
    den0 = den[0]
    if den0 != _ONE:
        raise AssertionError("map denominator series must start at 1")
    den_tail = list(den)
    den_tail[0] = _ZERO
    return _mul(num, _invert_one_plus(den_tail, m_order), m_order)


def _scalar_log1p(m_order: int) -> list[Fraction]:
    """Coefficients of ln(1 + T) through T^m_order."""
    return [Fraction(0)] + [Fraction((-1) ** (i - 1), i) for i in range(1, m_order + 1)]


def _scalar_mul(a: list[Fraction], b: list[Fraction], m_order: int) -> list[Fraction]:
    out = [Fraction(0)] * (m_order + 1)
    for i, ai in enumerate(a):
        if not ai or i > m_order:
            continue
        top = m_order - i
        for j, bj in enumerate(b):
            if j > top:
                break
            if bj:
                out[i + j] += ai * bj
    return out


def _shift_series(polys: list[PolyQ], b1: Fraction, m_order: int) -> list[PolyQ]:
    """Series of S(n+1) = sum_m P_m(X - b1*ln(1+T)) * T^(m+1) * (1+T)^-(m+1).

    T = 1/n and X(n+1) = X - b1*ln(1+1/n); powers of 1/(n+1) are re-expanded
    with the binomial series.
    """
    delta = [c * (-b1) for c in _scalar_log1p(m_order)]
    max_tpow = min(len(polys) - 1, max(p.degree for p in polys) if polys else 0)
    delta_pows: list[list[Fraction]] = [[Fraction(1)] + [Fraction(0)] * m_order]
    for _ in range(max(max_tpow, 0)):
        delta_pows.append(_scalar_mul(delta_pows[-1], delta, m_order))

    # (1+T)^-1 and its powers, computed incrementally
    geom = [Fraction((-1) ** i) for i in range(m_order + 1)]
    binom_pow = [Fraction(1)] + [Fraction(0)] * m_order

    out = [_ZERO] * (m_order + 1)
    for m, p in enumerate(polys):
        binom_pow = _scalar_mul(binom_pow, geom, m_order)  # (1+T)^-(m+1)
        if m + 1 > m_order or not p:
            continue
        # compose P_m(X + delta(T)) as sum_t P_m^(t)(X)/t! * delta^t
        composed = [_ZERO] * (m_order + 1)
        deriv = p
        fact = Fraction(1)
        for t in range(p.degree + 1):
            if t:
                deriv = deriv.derivative()
                fact *= t
            coeff_poly = deriv * (1 / fact)
            sigma = delta_pows[t]
            for i in range(m_order + 1):
                if sigma[i]:
                    composed[i] = composed[i] + coeff_poly * sigma[i]
        term = _mul_scalar_series(composed, binom_pow, m_order)
        # multiply by T^(m+1): shift indices up
        for i in range(m_order - m):
            out[i + m + 1] = out[i + m + 1] + term[i]
    return out


def _defect(polys: list[PolyQ], m: MapSpec, b1: Fraction, m_order: int) -> list[PolyQ]:
    """Coefficients of f(S(n)) - S(n+1) through T^m_order."""
    s = [_ZERO] * (m_order + 1)
    for mm, p in enumerate(polys):
        if mm + 1 <= m_order:
            s[mm + 1] = p
    return _sub(_apply_map(s, m, m_order), _shift_series(polys, b1, m_order))


# --------------------------------------------------------------------------
# public types and operations
# --------------------------------------------------------------------------

class Expansion:
    """Derived expansion x_n ~ sum P_m(X)/n^(m+1) for one map."""

    __slots__ = ("map", "b1", "k", "polys")

    def __init__(self, map: MapSpec, b1: Fraction, k: int, polys: tuple[PolyQ, ...]):
        object.__setattr__(self, "map", map)
        object.__setattr__(self, "b1", Fraction(b1))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "polys", tuple(polys))

    def __setattr__(self, name, value):
        raise AttributeError("Expansion is immutable")

    def __eq__(self, other):
        if not isinstance(other, Expansion):
            return NotImplemented
        return (self.map, self.b1, self.k, self.polys) == \
            (other.map, other.b1, other.k, other.polys)

    def __repr__(self) -> str:
        return f"Expansion(map={self.map.name!r}, b1={self.b1}, k={self.k})"


def map_label(m: MapSpec) -> str:
    """Stable text identifier: registry name when known, else expression."""
    for name in builtin_names():
        known = builtin_map(name)
        if known == m and known.domain_sup == m.domain_sup:
            return name
    return render_map(m)


@lru_cache(maxsize=None)
def _derive_cached(m: MapSpec, k: int) -> Expansion:
    b1 = canonical_form(m, 1).b1
    polys: list[PolyQ] = [_ONE]
    for j in range(1, k):
        m_order = j + 2
        defect = _defect(polys, m, b1, m_order)
        for i in range(j + 2):
            if defect[i]:
                raise AssertionError(
                    f"derivation defect at order {i} before solving order {j}")
        rho = defect[j + 2]
        if j == 1:
            if b1 == 0:
                if rho:
                    raise AssertionError("order-3 defect must vanish when b1 = 0")
                u = _X
            else:
                # integrate u' = -rho/b1 with zero constant term
                u = PolyQ([Fraction(0)] + [
                    -rho[d] / (b1 * (d + 1)) for d in range(rho.degree + 1)])
        else:
            coeffs = [Fraction(0)] * (rho.degree + 2)
            for d in range(rho.degree, -1, -1):
                coeffs[d] = (-rho[d] - b1 * (d + 1) * coeffs[d + 1]) / (j - 1)
            u = PolyQ(coeffs[: rho.degree + 1])
        polys.append(u)

    for m_idx, p in enumerate(polys):
        if p.degree != m_idx or p.leading != 1:
            raise AssertionError(f"P_{m_idx} is not monic of degree {m_idx}")
    if polys[0] != _ONE or (k > 1 and polys[1] != _X):
        raise AssertionError("expansion normalization failed")
    return Expansion(map=m, b1=b1, k=k, polys=tuple(polys))


def derive_expansion(m: MapSpec, k: int) -> Expansion:
    """Derive P_0..P_(k-1) exactly by matching orders in x_{n+1} = f(x_n)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return _derive_cached(m, int(k))


def residual(exp: Expansion, depth: int) -> list[BivarPolyQ]:
    """Defect coefficients of n^-1 .. n^-depth after substituting the series.

    All entries are identically zero for a correct expansion. Returned as
    bivariate polynomials in (L, C) via X = -b1*L - C.
    """
    if not 1 <= depth <= exp.k:
        raise ValueError("depth must satisfy 1 <= depth <= k")
    defect = _defect(list(exp.polys), exp.map, exp.b1, depth)
    return [BivarPolyQ.from_poly_in_x(defect[i], exp.b1) for i in range(1, depth + 1)]


def eval_expansion(exp: Expansion, n, x_arg, prec: int):
    """Evaluate sum_m P_m(X)/n^(m+1) at numeric X with `prec` bits."""
    with mpmath.workprec(prec):
        nf = mpmath.mpf(n)
        xf = mpmath.mpf(x_arg.numerator) / x_arg.denominator \
            if isinstance(x_arg, Fraction) else mpmath.mpf(x_arg)
        pvals = [_eval_poly_mpf(p, xf) for p in exp.polys]
        acc = mpmath.mpf(0)
        for v in reversed(pvals):
            acc = (acc + v) / nf
        return acc


def _eval_poly_mpf(p: PolyQ, x):
    acc = mpmath.mpf(0)
    for c in reversed(p.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


class WSeries:
    """Reciprocal-side series 1/x_n = n + b1*L + C + sum R_m(L, C)/n^m."""

    __slots__ = ("map", "log_coeff", "k", "terms")

    def __init__(self, map: MapSpec, log_coeff: Fraction, k: int,
                 terms: tuple[BivarPolyQ, ...]):
        object.__setattr__(self, "map", map)
        object.__setattr__(self, "log_coeff", Fraction(log_coeff))
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "terms", tuple(terms))

    def __setattr__(self, name, value):
        raise AttributeError("WSeries is immutable")

    def term(self, m: int) -> BivarPolyQ:
        """R_m for 1 <= m <= k."""
        return self.terms[m - 1]

    def render(self) -> str:
        parts = ["n"]
        if self.log_coeff == 1:
            parts.append("+ L")
        elif self.log_coeff == -1:
            parts.append("- L")
        elif self.log_coeff != 0:
            parts.append(f"+ {self.log_coeff}*L" if self.log_coeff > 0
                         else f"- {-self.log_coeff}*L")
        parts.append("+ C")
        for m, r in enumerate(self.terms, start=1):
            if not r:
                continue
            body = r.render()
            denom = "n" if m == 1 else f"n^{m}"
            if len(r.terms) == 1 and not body.startswith("-"):
                parts.append(f"+ {body}/{denom}")
            elif len(r.terms) == 1:
                parts.append(f"- {body[1:]}/{denom}")
            else:
                parts.append(f"+ ({body})/{denom}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"WSeries(map={self.map.name!r}, k={self.k})"


def reciprocal(exp: Expansion, k: int) -> WSeries:
    """Invert the x-side series to the w = 1/x side, keeping R_1..R_k.

    Requires exp.k >= k + 2 so every returned coefficient is complete.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if exp.k < k + 2:
        raise ValueError("need exp.k >= k + 2 source terms")
    m_order = k + 1
    s1 = [_ZERO] * (m_order + 1)
    for m in range(1, min(exp.k, m_order + 1)):
        s1[m] = exp.polys[m]
    inv = _invert_one_plus(s1, m_order)
    # independent re-multiplication check
    check = _mul([_ONE] + s1[1:], inv, m_order)
    if check[0] != _ONE or any(check[i] for i in range(1, m_order + 1)):
        raise AssertionError("reciprocal series product check failed")
    if inv[1] != -_X:
        raise AssertionError("w-series constant term must be b1*L + C")
    terms = []
    for m in range(1, k + 1):
        r = BivarPolyQ.from_poly_in_x(inv[m + 1], exp.b1)
        if r.degree_l() > m or r.degree_c() > m:
            raise AssertionError(f"R_{m} degree bound violated")
        terms.append(r)
    return WSeries(map=exp.map, log_coeff=exp.b1, k=k, terms=tuple(terms))


def additive_wseries(ell: int, sign: int, k: int) -> WSeries:
    """w-side expansion for x_{n+1} = x_n + 1 + sign/x_n^ell (integer ell >= 1).

    Conjugating by y = 1/x turns the recurrence into the rational map
    y/(1 + y + sign*y^(ell+1)), whose derived expansion is inverted back.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    conj = _additive_conjugate(ell, sign)
    exp = derive_expansion(conj, k + 2)
    return reciprocal(exp, k)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------

def expansion_to_json(exp: Expansion) -> dict:
    return {
        "map": map_label(exp.map),
        "b1": str(exp.b1),
        "k": exp.k,
        "polys": [poly_to_strings(p) for p in exp.polys],
    }


def expansion_from_json(data: dict) -> Expansion:
    label = data["map"]
    try:
        m = builtin_map(label)
    except Exception:
        m = parse_map_expr(label)
    return Expansion(
        map=m,
        b1=Fraction(data["b1"]),
        k=int(data["k"]),
        polys=tuple(poly_from_strings(item) for item in data["polys"]),
    )


def wseries_to_json(ws: WSeries) -> dict:
    return {
        "map": map_label(ws.map),
        "log_coeff": str(ws.log_coeff),
        "k": ws.k,
        "terms": [r.to_triples() for r in ws.terms],
    }
