#!/usr/bin/env python3
"""Timing comparison of the two orbit-iteration kernels.

Runs the same workloads through the compiled MPFR extension and the
pure-Python mpmath kernel and prints a table with the speedup.  The
workloads mirror real use: orbit lengths and precisions are those the
constant estimator selects for 30/50/100-digit requests.

Usage:
    python3 benchmarks/bench_iterate.py [--repeats R] [--quick]
"""

from __future__ import annotations

import argparse
import statistics
import time
from fractions import Fraction

from abelkit import _iterpure
from abelkit.backend import iterate_raw_with
from abelkit.maps import builtin_map

try:
    from abelkit import _itercore
except ImportError:
    _itercore = None


# (label, map name, x0, steps, precision bits) — the (N, precision)
# pairs are what select_parameters picks at 30, 50, and 100 digits.
WORKLOADS = [
    ("30-digit scale", "B", Fraction(1, 2), 2**10, 233),
    ("50-digit scale", "B", Fraction(1, 2), 2**13, 300),
    ("100-digit scale", "A", Fraction(1, 2), 2**22, 466),
    ("100-digit scale", "I", Fraction(1, 2), 2**22, 466),
]

QUICK_WORKLOADS = WORKLOADS[:2]


def time_kernel(kernel, name, x0, steps, prec, repeats):
    m = builtin_map(name)
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        status, step, mant, exp2 = iterate_raw_with(
            kernel, m, x0, steps, prec)
        timings.append(time.perf_counter() - start)
        assert status == _iterpure.STATUS_OK, f"unexpected status {status}"
    return min(timings), statistics.median(timings)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repetitions per cell (default: 3)")
    parser.add_argument("--quick", action="store_true",
                        help="run only the small workloads")
    args = parser.parse_args()

    workloads = QUICK_WORKLOADS if args.quick else WORKLOADS
    kernels = [("pure", _iterpure)]
    if _itercore is not None:
        kernels.append(("compiled", _itercore))
    else:
        print("note: compiled extension not importable; timing pure only")

    header = (f"{'workload':<16} {'map':<4} {'steps':>8} {'bits':>5} "
              + "".join(f"{name + ' (s)':>14}" for name, _ in kernels)
              + ("   speedup" if len(kernels) == 2 else ""))
    print(header)
    print("-" * len(header))
    for label, name, x0, steps, prec in workloads:
        best = {}
        for kname, kernel in kernels:
            best[kname], _ = time_kernel(kernel, name, x0, steps, prec,
                                         args.repeats)
        row = f"{label:<16} {name:<4} {steps:>8} {prec:>5}"
        for kname, _ in kernels:
            row += f"{best[kname]:>14.4f}"
        if len(kernels) == 2:
            row += f"{best['pure'] / best['compiled']:>9.1f}x"
        print(row)

    # agreement check: both kernels must produce the same value
    # (mantissas may differ in trailing zero bits, so normalize first)
    if _itercore is not None:
        def normalized(result):
            status, step, man, exp2 = result
            while man and man % 2 == 0:
                man //= 2
                exp2 += 1
            return status, step, man, exp2

        m = builtin_map("B")
        ref = iterate_raw_with(_iterpure, m, Fraction(1, 2), 4096, 300)
        got = iterate_raw_with(_itercore, m, Fraction(1, 2), 4096, 300)
        if normalized(ref) != normalized(got):
            print("MISMATCH: kernels disagree on B orbit at 300 bits")
            return 1
        print("\nkernel agreement: identical value at 300 bits")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
