"""High-precision Abel constants via large-N orbit matching.

The constant C attached to a map and a start point x0 is pinned down by
iterating the map N times at high precision, solving the truncated
power-log expansion for the argument X that reproduces the iterate, and
reading off C = -b1*ln(N) - X.  The estimate is validated by recomputing
at 2N and counting agreeing decimal digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .backend import iterate
from .errors import (
    AmbiguousRoot,
    InfeasibleParameters,
    NewtonDiverged,
    OrbitEscaped,
    ValidationFailed,
)
from .logseries import Expansion, derive_expansion, map_label
from .maps import MapSpec, _additive_conjugate
from .numfmt import agreeing_digits, truncate_decimal

_MAX_N_EXPONENT = 40


def _min_precision(digits: int) -> int:
    """Smallest bit count p with 2^p >= 10^(digits+40)."""
    return (10 ** (digits + 40)).bit_length()


@dataclass(frozen=True)
class SolveParams:
    """Parameters for one constant computation.

    digits     requested fractional decimal digits of the constant
    k          truncation order of the expansion used by the solver
    N          number of exact-map iterations (a power of two in practice)
    precision  working precision in bits
    """

    digits: int
    k: int
    N: int
    precision: int

    def __post_init__(self):
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.N < 10:
            raise ValueError("N must be >= 10")
        if self.precision < _min_precision(self.digits):
            raise ValueError(
                f"precision {self.precision} too small for "
                f"{self.digits} digits; need >= {_min_precision(self.digits)}")


@dataclass(frozen=True)
class ConstantEstimate:
    """A validated constant value together with how it was obtained."""

    value: mpmath.mpf
    digits_agreed: int
    params: SolveParams
    map: MapSpec
    x0: Fraction


def select_parameters(m: MapSpec, digits: int, k: int = 20,
                      c_bound: float = 10.0) -> SolveParams:
    """Choose N and working precision for a `digits`-digit constant.

    Picks the smallest power of two N with
        (ln N + c_bound + 2)^k / N^(k+1) < 10^-(digits+5),
    so the first neglected expansion term is comfortably below the target
    accuracy for any constant bounded by `c_bound` in absolute value.
    Raises InfeasibleParameters when no N <= 2^40 satisfies the bound
    (k too small for the requested digits).
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    if k < 2:
        raise ValueError("k must be >= 2")
    precision = _min_precision(digits)
    with mpmath.workprec(80):
        budget = mpmath.mpf(10) ** (-(digits + 5))
        for e in range(4, _MAX_N_EXPONENT + 1):
            n = 1 << e
            lead = (mpmath.log(n) + abs(c_bound) + 2) ** k
            if lead < budget * mpmath.mpf(n) ** (k + 1):
                return SolveParams(digits=digits, k=k, N=n,
                                   precision=precision)
    raise InfeasibleParameters(
        f"no N <= 2^{_MAX_N_EXPONENT} reaches 10^-{digits + 5} "
        f"with k={k}; increase k")


def iterate_real(m: MapSpec, x0, n: int, precision: int) -> mpmath.mpf:
    """n-th iterate of m from x0, computed at `precision` bits.

    x0 must lie strictly inside (0, domain_sup); otherwise OrbitEscaped
    is raised at step 0.  Escapes and poles during iteration raise
    OrbitEscaped / PoleHit with the offending step.
    """
    x0 = Fraction(x0)
    if x0 <= 0 or (m.domain_sup is not None and x0 >= m.domain_sup):
        sup = "inf" if m.domain_sup is None else str(m.domain_sup)
        raise OrbitEscaped(
            f"start point {x0} outside domain (0, {sup})", step=0)
    return iterate(m, x0, n, precision)


def _poly_eval_mpf(poly, x):
    acc = mpmath.mpf(0)
    for c in reversed(poly.coeffs):
        acc = acc * x + mpmath.mpf(c.numerator) / c.denominator
    return acc


def _series_and_derivative(exp: Expansion, n: int, x):
    """Value and d/dX of sum_m P_m(X)/n^(m+1) at X = x."""
    inv = mpmath.mpf(1) / n
    scale = inv
    total = mpmath.mpf(0)
    slope = mpmath.mpf(0)
    for poly in exp.polys:
        total += _poly_eval_mpf(poly, x) * scale
        slope += _poly_eval_mpf(poly.derivative(), x) * scale
        scale *= inv
    return total, slope


def solve_for_X(exp: Expansion, n: int, target, precision: int) -> mpmath.mpf:
    """Solve sum_m P_m(X)/n^(m+1) = target for X by Newton iteration.

    Starts from the first-order solution X0 = (target - 1/n)*n^2 and
    requires the residual to drop below |target| * 10^30 * 2^-precision
    (ten digits beyond the accuracy the precision was chosen for), then
    polishes until the Newton step hits the precision floor.  Raises
    AmbiguousRoot when the target is outside the range the expansion can
    represent (|X0| >= n, where successive terms no longer decrease) or
    when a step exceeds 1 + |X0| (the iteration is leaving the basin of
    the expected root), and NewtonDiverged if 200 iterations do not
    converge.
    """
    if exp.k < 2:
        raise ValueError("expansion must have k >= 2")
    if n < 10:
        raise ValueError("n must be >= 10")
    with mpmath.workprec(precision):
        target = mpmath.mpf(target) if not isinstance(target, Fraction) else \
            mpmath.mpf(target.numerator) / target.denominator
        if target <= 0:
            raise ValueError("target must be positive")
        x0 = (target - mpmath.mpf(1) / n) * mpmath.mpf(n) ** 2
        if abs(x0) >= n:
            raise AmbiguousRoot(
                f"initial guess |X0| = {mpmath.nstr(abs(x0), 6)} is not "
                f"below n = {n}; the target lies outside the range the "
                f"expansion represents")
        tol = abs(target) * mpmath.mpf(10) ** 30 * mpmath.mpf(2) ** (-precision)
        floor_eps = mpmath.mpf(2) ** (-precision + 8)
        leash = 1 + abs(x0)
        x = x0
        converged = False
        for _ in range(200):
            value, slope = _series_and_derivative(exp, n, x)
            resid = value - target
            if abs(resid) < tol:
                converged = True
            if slope == 0:
                if converged:
                    return x
                raise NewtonDiverged(
                    f"zero derivative at X = {mpmath.nstr(x, 8)}")
            step = resid / slope
            if abs(step) > leash:
                raise AmbiguousRoot(
                    f"Newton step {mpmath.nstr(step, 6)} exceeds "
                    f"1 + |X0| = {mpmath.nstr(leash, 6)}")
            x = x - step
            if converged and abs(step) <= floor_eps * (1 + abs(x)):
                return x
        if converged:
            return x
    raise NewtonDiverged("no convergence in 200 Newton iterations")


def _constant_at(m: MapSpec, exp: Expansion, x0: Fraction, n: int,
                 precision: int) -> mpmath.mpf:
    xn = iterate_real(m, x0, n, precision)
    xstar = solve_for_X(exp, n, xn, precision)
    with mpmath.workprec(precision):
        b1 = mpmath.mpf(exp.b1.numerator) / exp.b1.denominator
        return -b1 * mpmath.log(n) - xstar


def estimate_constant(m: MapSpec, x0, digits: int,
                      k: int = 20) -> ConstantEstimate:
    """Abel constant of m at start point x0, validated to `digits` digits.

    Computes the constant at the selected N and again at 2N; the estimate
    is accepted when the two values agree to at least `digits` fractional
    decimal digits (the 2N value is returned).  On disagreement the
    computation is retried once with k+5 and 4N before ValidationFailed.
    """
    x0 = Fraction(x0)
    params = select_parameters(m, digits, k)
    cap = int(params.precision * 0.30103)

    def attempt(p: SolveParams):
        exp = derive_expansion(m, p.k)
        first = _constant_at(m, exp, x0, p.N, p.precision)
        second = _constant_at(m, exp, x0, 2 * p.N, p.precision)
        return second, agreeing_digits(first, second, cap=cap)

    value, agreed = attempt(params)
    if agreed >= digits:
        return ConstantEstimate(value=value, digits_agreed=agreed,
                                params=params, map=m, x0=x0)
    retry = SolveParams(digits=digits, k=k + 5, N=4 * params.N,
                        precision=params.precision)
    value, agreed = attempt(retry)
    if agreed >= digits:
        return ConstantEstimate(value=value, digits_agreed=agreed,
                                params=retry, map=m, x0=x0)
    raise ValidationFailed(
        f"estimates at N and 2N agree to only {agreed} digits "
        f"(requested {digits}) even after retry with k={k + 5}, "
        f"N={retry.N}")


def estimate_constant_additive(ell: int, sign: int, x0, digits: int,
                               k: int = 20) -> ConstantEstimate:
    """Constant of the additive recurrence x -> x + 1 +/- x^-ell at x0.

    Conjugates through y = 1/x (the equivalent rational map acting on
    y0 = 1/x0) and delegates to estimate_constant.
    """
    x0 = Fraction(x0)
    if x0 <= 0:
        raise OrbitEscaped(f"start point {x0} must be positive", step=0)
    m = _additive_conjugate(ell, sign)
    return estimate_constant(m, 1 / x0, digits, k=k)


def constant_to_json(est: ConstantEstimate) -> dict:
    """JSON-ready summary of a constant estimate (value truncated)."""
    return {
        "map": map_label(est.map),
        "x0": str(est.x0),
        "digits": est.params.digits,
        "value": truncate_decimal(est.value, est.params.digits),
        "N": est.params.N,
        "k": est.params.k,
        "precision_bits": est.params.precision,
        "digits_agreed": est.digits_agreed,
    }
