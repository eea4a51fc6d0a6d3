"""Pure-Python iteration kernel (mpmath).

Same contract as the compiled kernel in _itercore: iterate x <- p(x)/q(x)
n times at a fixed binary precision, watching for domain escape. Returns
(status, step, mantissa, exponent) where status is 0 ok / 1 escaped /
2 pole, step is the iterate index the status refers to, and the final
value is mantissa * 2**exponent (exact).
"""

from __future__ import annotations

import mpmath

STATUS_OK = 0
STATUS_ESCAPED = 1
STATUS_POLE = 2


def iterate_raw(pc: tuple[int, ...], qc: tuple[int, ...], x0_num: int, x0_den: int,
                n: int, prec: int, sup_num: int, sup_den: int):
    """Iterate the integer-coefficient rational map; see module docstring.

    sup_den = 0 means no upper domain bound.
    """
    with mpmath.workprec(prec):
        x = mpmath.mpf(x0_num) / x0_den
        sup = mpmath.mpf(sup_num) / sup_den if sup_den else None
        pcf = [mpmath.mpf(c) for c in pc]
        qcf = [mpmath.mpf(c) for c in qc]
        zero = mpmath.mpf(0)

        for i in range(n):
            p = zero
            for c in reversed(pcf):
                p = p * x + c
            q = zero
            for c in reversed(qcf):
                q = q * x + c
            if q == 0:
                return (STATUS_POLE, i, 0, 0)
            if q < 0:
                return (STATUS_ESCAPED, i, 0, 0)
            x = p / q
            if x <= 0 or (sup is not None and x >= sup):
                return (STATUS_ESCAPED, i + 1, 0, 0)

        sign, man, exp, _ = x._mpf_
        mant = -int(man) if sign else int(man)
        return (STATUS_OK, n, mant, int(exp))
