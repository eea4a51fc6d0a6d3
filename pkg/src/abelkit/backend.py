"""Iteration backend selection.

Two interchangeable kernels drive the hot orbit loop:

* ``_itercore`` — compiled extension (MPFR), built at install time;
* ``_iterpure`` — pure-Python kernel on mpmath, always available.

The compiled kernel is preferred when importable.  Set the environment
variable ``ABELKIT_BACKEND`` to ``pure`` or ``compiled`` to force a choice
(forcing ``compiled`` raises if the extension is missing).
"""

from __future__ import annotations

import os
from fractions import Fraction

import mpmath

from ._iterpure import STATUS_ESCAPED, STATUS_OK, STATUS_POLE
from .errors import OrbitEscaped, PoleHit
from .maps import MapSpec

_FORCED = os.environ.get("ABELKIT_BACKEND", "").strip().lower()

if _FORCED == "pure":
    from . import _iterpure as _kernel

    BACKEND_NAME = "pure"
elif _FORCED == "compiled":
    from . import _itercore as _kernel  # type: ignore[no-redef]

    BACKEND_NAME = "compiled"
else:
    try:
        from . import _itercore as _kernel  # type: ignore[no-redef]

        BACKEND_NAME = "compiled"
    except ImportError:
        from . import _iterpure as _kernel

        BACKEND_NAME = "pure"


def backend_name() -> str:
    """Name of the active kernel: ``"compiled"`` or ``"pure"``."""
    return BACKEND_NAME


def iterate_raw_with(kernel, m: MapSpec, x0: Fraction, n: int, prec: int):
    """Run `n` steps of `m` from `x0` on an explicit kernel module."""
    pc, qc = m.integer_coeffs()
    if m.domain_sup is None:
        sup_num, sup_den = 0, 0
    else:
        sup_num = m.domain_sup.numerator
        sup_den = m.domain_sup.denominator
    return kernel.iterate_raw(
        pc, qc, x0.numerator, x0.denominator, n, prec, sup_num, sup_den
    )


def iterate(m: MapSpec, x0: Fraction, n: int, prec: int) -> mpmath.mpf:
    """Iterate ``x <- m(x)`` exactly `n` times at `prec` bits.

    Returns the final iterate as an mpmath float.  Raises OrbitEscaped
    (carrying the failing step) if an iterate leaves (0, sup), or PoleHit
    if the denominator vanishes.
    """
    status, step, mant, exp2 = iterate_raw_with(_kernel, m, x0, n, prec)
    if status == STATUS_ESCAPED:
        raise OrbitEscaped(
            f"orbit of {m.name} left the domain at step {step}", step=step
        )
    if status == STATUS_POLE:
        raise PoleHit(f"orbit of {m.name} hit a pole of the map at step {step}")
    assert status == STATUS_OK
    # exact conversion of mant * 2**exp2, independent of the ambient precision
    # (mpf(tuple) would round to the current context; make_mpf does not)
    return mpmath.mp.make_mpf(mpmath.libmp.from_man_exp(mant, exp2))
