"""Kernel parity: the compiled and pure iteration cores must agree exactly."""

from fractions import Fraction as Q

import mpmath
import pytest

from abelkit import backend_name, builtin_map, iterate
from abelkit.backend import iterate_raw_with
from abelkit.errors import OrbitEscaped, PoleHit
from abelkit import _iterpure

try:
    from abelkit import _itercore
except ImportError:
    _itercore = None

KERNELS = [_iterpure] if _itercore is None else [_iterpure, _itercore]


def _value(raw):
    status, step, mant, exp2 = raw
    if status != _iterpure.STATUS_OK:
        return (status, step)
    return mpmath.mpf(mpmath.libmp.from_man_exp(mant, exp2))


def test_backend_selected():
    assert backend_name() in ("compiled", "pure")


@pytest.mark.skipif(_itercore is None, reason="compiled kernel not built")
@pytest.mark.parametrize("name,x0,n,prec", [
    ("A", Q(1, 2), 500, 128),
    ("A", Q(1, 3), 1000, 192),
    ("B", Q(1), 1000, 256),
    ("B", Q(4), 2000, 64),
    ("I", Q(1, 2), 777, 100),
    ("J", Q(3), 1234, 333),
    ("ORACLE", Q(2, 3), 100, 53),
    ("CUBIC_PLUS", Q(1, 2), 625, 128),
    ("CUBIC_MINUS", Q(1, 2), 625, 128),
])
def test_kernels_agree_bitwise(name, x0, n, prec):
    m = builtin_map(name)
    r_pure = iterate_raw_with(_iterpure, m, x0, n, prec)
    r_comp = iterate_raw_with(_itercore, m, x0, n, prec)
    assert _value(r_pure) == _value(r_comp)
    assert r_pure[0] == r_comp[0] == _iterpure.STATUS_OK


@pytest.mark.skipif(_itercore is None, reason="compiled kernel not built")
def test_kernels_agree_on_escape():
    # starting above the domain supremum: A sends it negative on step 1
    m = builtin_map("A")
    r_pure = iterate_raw_with(_iterpure, m, Q(3, 2), 10, 64)
    r_comp = iterate_raw_with(_itercore, m, Q(3, 2), 10, 64)
    assert r_pure[:2] == r_comp[:2] == (_iterpure.STATUS_ESCAPED, 1)


def test_iterate_oracle_tracks_exact_orbit():
    # x/(1+x) from 1/q: iterate n is 1/(q+n) up to per-step rounding
    O = builtin_map("ORACLE")
    for q in (1, 3, 7):
        v = iterate(O, Q(1, q), 50, 128)
        with mpmath.workprec(160):
            truth = mpmath.mpf(1) / (q + 50)
            assert abs(v - truth) / truth < mpmath.mpf(2) ** -120


def test_iterate_zero_steps_returns_start():
    B = builtin_map("B")
    assert iterate(B, Q(5, 4), 0, 64) == mpmath.mpf(5) / 4


def test_iterate_escape_raises():
    A = builtin_map("A")
    with pytest.raises(OrbitEscaped) as exc:
        iterate(A, Q(3, 2), 10, 64)
    assert exc.value.step == 1


def test_iterate_matches_exact_orbit():
    # 16 exact steps of B from 1 vs the float kernel at high precision
    # (the exact orbit roughly doubles in size per step, so keep n small)
    from abelkit.maps import eval_exact

    B = builtin_map("B")
    x = Q(1)
    for _ in range(16):
        x = eval_exact(B, x)
    v = iterate(B, Q(1), 16, 400)
    with mpmath.workprec(500):
        truth = mpmath.mpf(x.numerator) / x.denominator
        assert abs(v - truth) / truth < mpmath.mpf(2) ** -380


def test_precision_scaling():
    # doubling the precision should change the result by < 2^-prec relatively
    B = builtin_map("B")
    v1 = iterate(B, Q(1), 10000, 128)
    v2 = iterate(B, Q(1), 10000, 256)
    with mpmath.workprec(300):
        assert abs(v1 - v2) / abs(v2) < mpmath.mpf(2) ** -100
