"""Exact rational orbits, sum=product sequences, and integer recurrences.

Everything here is exact Fraction/integer arithmetic: orbits under the
rational maps, the sequences tied to their numerators and denominators,
predicate checks for the observed patterns, and the substitution
x -> x/(1+x) that carries one orbit family onto another.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import (
    DegenerateStep,
    NonIntegralStep,
    OrbitEscaped,
    ReparametrizationFailed,
    SizeLimit,
)
from .logseries import map_label
from .maps import MapSpec, builtin_map, eval_exact

_DEFAULT_ORBIT_CAP = 25

# number of leading terms the pattern predicates treat as established;
# beyond this they are reported as conjecture-consistent only
_ESTABLISHED_TERMS = 6


@dataclass(frozen=True)
class RationalOrbit:
    """Exact orbit: terms[0] = x0 and terms[i+1] = map(terms[i])."""

    map: MapSpec
    x0: Fraction
    terms: tuple


@dataclass(frozen=True)
class SumProductSeq:
    """t_1..t_n with sum(prefix) = product(prefix) for every prefix >= 2."""

    t1: Fraction
    terms: tuple


@dataclass(frozen=True)
class QuetSeq:
    """u_1..u_n with u_{n+1} = u_n^2 + u_n^3/u_{n-1}^2 - u_n*u_{n-1}^2."""

    u1: int
    u2: int
    terms: tuple


@dataclass(frozen=True)
class VSeq:
    """v_1..v_n with v_{n+1} = v_n^2 + v_n^3/(2v_{n-1}^2) - v_n*v_{n-1}^2/2."""

    v1: int
    v2: int
    terms: tuple


def orbit_exact(m: MapSpec, x0, n: int, allow_large: bool = False
                ) -> RationalOrbit:
    """Exact orbit of length n+1 from x0.

    Term sizes roughly double in digit count each step, so n is capped at
    25 unless allow_large=True (which warns).  Raises OrbitEscaped when a
    term leaves (0, domain_sup), PoleHit on an exact pole, SizeLimit when
    n exceeds the cap.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > _DEFAULT_ORBIT_CAP:
        if not allow_large:
            raise SizeLimit(
                f"n = {n} exceeds the default cap {_DEFAULT_ORBIT_CAP}; "
                f"term sizes grow doubly exponentially "
                f"(pass allow_large=True to override)")
        warnings.warn(
            f"computing {n} exact steps; term sizes grow doubly "
            f"exponentially", stacklevel=2)
    x0 = Fraction(x0)
    sup = m.domain_sup

    def in_domain(x):
        return x > 0 and (sup is None or x < sup)

    if not in_domain(x0):
        raise OrbitEscaped(f"start point {x0} outside domain", step=0)
    terms = [x0]
    for i in range(n):
        nxt = eval_exact(m, terms[-1])
        if not in_domain(nxt):
            raise OrbitEscaped(
                f"term {nxt} at step {i + 1} left the domain", step=i + 1)
        terms.append(nxt)
    return RationalOrbit(map=m, x0=x0, terms=tuple(terms))


def t_sequence(t1, n: int) -> SumProductSeq:
    """First n terms of the sum=product sequence seeded with t1.

    Each new term t solves (sum so far) + t = (product so far) * t, i.e.
    t = S/(P-1).  DegenerateStep when the running product is 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t1 = Fraction(t1)
    terms = [t1]
    total, product = t1, t1
    for _ in range(n - 1):
        if product == 1:
            raise DegenerateStep(
                f"running product is 1 after {len(terms)} terms; "
                f"the defining equation has no solution")
        t = total / (product - 1)
        terms.append(t)
        total += t
        product *= t
    return SumProductSeq(t1=t1, terms=tuple(terms))


def u_sequence(u1: int, u2: int, n: int) -> QuetSeq:
    """First n terms of u_{n+1} = u_n^2 + u_n^3/u_{n-1}^2 - u_n*u_{n-1}^2.

    The division must be exact at every step; NonIntegralStep otherwise.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if u1 < 1 or u2 < 1:
        raise ValueError("seeds must be positive integers")
    terms = [u1, u2]
    while len(terms) < n:
        prev, cur = terms[-2], terms[-1]
        cube, square = cur ** 3, prev ** 2
        if cube % square:
            raise NonIntegralStep(
                f"{prev}^2 does not divide {cur}^3 at term {len(terms) + 1}")
        terms.append(cur ** 2 + cube // square - cur * square)
    return QuetSeq(u1=u1, u2=u2, terms=tuple(terms))


def v_sequence(v1: int, v2: int, n: int) -> VSeq:
    """First n terms of v_{n+1} = v_n^2 + v_n^3/(2v_{n-1}^2) - v_n*v_{n-1}^2/2.

    The two halves may individually be half-integers; the sum must be an
    integer (NonIntegralStep otherwise).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if v1 < 1 or v2 < 1:
        raise ValueError("seeds must be positive integers")
    terms = [v1, v2]
    while len(terms) < n:
        prev, cur = terms[-2], terms[-1]
        num = 2 * cur ** 2 * prev ** 2 + cur ** 3 - cur * prev ** 4
        if num % (2 * prev ** 2):
            raise NonIntegralStep(
                f"recurrence value is not integral at term {len(terms) + 1}")
        terms.append(num // (2 * prev ** 2))
    return VSeq(v1=v1, v2=v2, terms=tuple(terms))


@dataclass(frozen=True)
class PatternReport:
    """Outcome of the numerator/denominator pattern predicates.

    The named boolean fields cover the first 6 terms (the established
    range); None means the check does not apply to this pair.  Checks on
    later terms are collected in conjecture_consistent, keyed by check
    name, since past that range the patterns are conjectural.
    """

    kind: str
    terms_checked: int
    numerators_match: Optional[bool] = None
    A_denominators_power: Optional[bool] = None
    I_denominators_are_u_ratios: Optional[bool] = None
    J_denominators_follow_v: Optional[bool] = None
    B_numerators_are_cumsum_denominators: Optional[bool] = None
    conjecture_consistent: dict = field(default_factory=dict)

    def all_established(self) -> bool:
        flags = [self.numerators_match, self.A_denominators_power,
                 self.I_denominators_are_u_ratios,
                 self.J_denominators_follow_v,
                 self.B_numerators_are_cumsum_denominators]
        return all(f for f in flags if f is not None)


def _split_range(flags, established):
    """(all(first `established`), all(rest)) of a list of booleans."""
    head = all(flags[:established]) if flags[:established] else True
    tail = all(flags[established:]) if flags[established:] else None
    return head, tail


def check_patterns(first: RationalOrbit, second: RationalOrbit,
                   n: int) -> PatternReport:
    """Check the numerator/denominator patterns on an (A,B) or (I,J) pair.

    `first` must be an A- or I-orbit and `second` the matching B- or
    J-orbit; n is the number of leading terms to examine.  Failures are
    recorded in the report, never raised.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if len(first.terms) < n or len(second.terms) < n:
        raise ValueError(f"both orbits must have at least {n} terms")
    pairs = {
        ("A", "B"): "AB",
        ("I", "J"): "IJ",
    }
    labels = (map_label(first.map), map_label(second.map))
    kind = pairs.get(labels)
    if kind is None:
        raise ValueError(
            f"expected an (A,B) or (I,J) orbit pair, got {labels}")
    est = _ESTABLISHED_TERMS
    conj = {}

    def record(name, flags):
        head, tail = _split_range(flags, est)
        if tail is not None:
            conj[name] = tail
        return head

    a = first.terms[:n]
    b = second.terms[:n]
    nums_ok = record("numerators_match",
                     [a[i].numerator == b[i].numerator for i in range(n)])

    if kind == "AB":
        base = first.x0.denominator
        den_ok = record(
            "A_denominators_power",
            [a[i].denominator == base ** (2 ** i) for i in range(n)])
        # partial sums of the sum=product sequence seeded at (1+x0)/x0
        # have denominators equal to the B numerators
        try:
            t1 = (1 + second.x0) / second.x0
            seq = t_sequence(t1, n)
            sums, acc = [], Fraction(0)
            for t in seq.terms:
                acc += t
                sums.append(acc)
            flags = [b[i].numerator == sums[i].denominator for i in range(n)]
        except DegenerateStep:
            flags = [False] * n
        cumsum_ok = record("B_numerators_are_cumsum_denominators", flags)
        return PatternReport(
            kind=kind, terms_checked=n, numerators_match=nums_ok,
            A_denominators_power=den_ok,
            B_numerators_are_cumsum_denominators=cumsum_ok,
            conjecture_consistent=conj)

    # IJ pair: I denominators are ratios u_{i+2}/u_{i+1} of the integer
    # recurrence seeded (1, den(x0)); J denominators follow the v-recurrence
    # seeded with its own first two denominators.
    try:
        useq = u_sequence(1, first.x0.denominator, n + 1).terms
        flags = [a[i].denominator * useq[i] == useq[i + 1] for i in range(n)]
    except (NonIntegralStep, ValueError):
        flags = [False] * n
    u_ok = record("I_denominators_are_u_ratios", flags)

    try:
        if n == 1:
            flags = [True]
        else:
            vseq = v_sequence(b[0].denominator, b[1].denominator, n).terms
            flags = [b[i].denominator == vseq[i] for i in range(n)]
    except (NonIntegralStep, ValueError):
        flags = [False] * n
    v_ok = record("J_denominators_follow_v", flags)
    return PatternReport(
        kind=kind, terms_checked=n, numerators_match=nums_ok,
        I_denominators_are_u_ratios=u_ok, J_denominators_follow_v=v_ok,
        conjecture_consistent=conj)


_DIRECTIONS = {"B->A": ("B", "A"), "J->I": ("J", "I")}


def reparametrize(orbit: RationalOrbit, direction: str) -> RationalOrbit:
    """Carry an orbit across the substitution x -> x/(1+x).

    direction is "B->A" or "J->I".  The substituted terms are verified to
    satisfy the target map's recurrence exactly; a failure would mean the
    identity does not hold and raises ReparametrizationFailed.
    """
    if direction not in _DIRECTIONS:
        raise ValueError(f"direction must be one of {sorted(_DIRECTIONS)}")
    src_name, dst_name = _DIRECTIONS[direction]
    if orbit.map != builtin_map(src_name):
        raise ValueError(
            f"direction {direction} needs a {src_name}-orbit, "
            f"got {map_label(orbit.map)}")
    if any(t <= 0 for t in orbit.terms):
        raise ValueError("all orbit terms must be positive")
    target = builtin_map(dst_name)
    new_terms = tuple(t / (1 + t) for t in orbit.terms)
    for i in range(len(new_terms) - 1):
        if eval_exact(target, new_terms[i]) != new_terms[i + 1]:
            raise ReparametrizationFailed(
                f"substituted term {i + 1} does not satisfy the "
                f"{dst_name} recurrence")
    return RationalOrbit(map=target, x0=new_terms[0], terms=new_terms)


def rational_terms_json(terms) -> list:
    """Terms as JSON-ready {num, den} decimal strings (arbitrary size)."""
    out = []
    for t in terms:
        f = Fraction(t)
        out.append({"num": str(f.numerator), "den": str(f.denominator)})
    return out


def orbit_to_json(orbit: RationalOrbit) -> dict:
    return {
        "map": map_label(orbit.map),
        "x0": str(orbit.x0),
        "terms": rational_terms_json(orbit.terms),
    }


def pattern_report_to_json(report: PatternReport) -> dict:
    doc = {
        "kind": report.kind,
        "terms_checked": report.terms_checked,
        "conjecture_consistent": dict(report.conjecture_consistent),
    }
    for name in ("numerators_match", "A_denominators_power",
                 "I_denominators_are_u_ratios", "J_denominators_follow_v",
                 "B_numerators_are_cumsum_denominators"):
        value = getattr(report, name)
        if value is not None:
            doc[name] = value
    return doc
