#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twin.

Usage:
    python benchmarks/compare_backends.py [--n 1048576] [--repeats 3]

Each kernel is timed on identical inputs; because the backends are
bit-identical, results are also cross-checked while timing.
"""

import argparse
import math
import time

import numpy as np

from gapscope import _kernels_py as kpy

try:
    from gapscope import _kernels_cy as kcy
except ImportError:
    kcy = None


def best_of(repeats, fn, *args):
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--n", type=int, default=1 << 20,
                        help="problem size (default 2^20)")
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    n = args.n
    if kcy is None:
        parser.error("compiled backend not built; nothing to compare")

    ln = math.log(n)
    limit = int(n * (ln + math.log(ln))) + 1 if n >= 6 else 16
    primes = kcy.sieve_first(n + 1, int(limit * 1.1) + 16)
    s = primes.astype(np.float64)
    ratios = s[:n] / s[n - 1]
    rng = np.random.default_rng(0)
    randoms = rng.random(n)

    cases = [
        ("sieve_first", (n, limit), lambda im: (im.sieve_first, n, limit)),
        ("neumaier_sum", (n,), lambda im: (im.neumaier_sum, randoms)),
        ("ratio_series", (n,), lambda im: (im.ratio_series, s, 2)),
        ("frac_root_sum", (n,), lambda im: (im.frac_root_sum, s, n, n)),
        ("star_discrepancy", (n,), lambda im: (im.star_discrepancy_sorted, ratios)),
        ("weyl_modulus h=1", (n,), lambda im: (im.weyl_modulus, ratios, 1)),
        ("riemann_sum cos", (n,), lambda im: (im.riemann_sum, ratios, im.FN_COS, 0.0)),
        ("gap_scan eq10", (n,), lambda im: (im.gap_scan, primes, 1, n - 1,
                                            im.FORM_EQ10, 0.0)),
        ("cramer_max", (n,), lambda im: (im.cramer_max, primes, 1, n - 1)),
    ]

    print(f"n = {n}; best of {args.repeats} runs; times in ms")
    print(f"{'kernel':<20} {'compiled':>10} {'pure':>10} {'speedup':>9}")
    for name, _, make in cases:
        fn_c, *args_c = make(kcy)
        fn_p, *args_p = make(kpy)
        tc, rc = best_of(args.repeats, fn_c, *args_c)
        tp, rp = best_of(args.repeats, fn_p, *args_p)
        check = _same(rc, rp)
        flag = "" if check else "  MISMATCH!"
        print(f"{name:<20} {tc * 1e3:>10.2f} {tp * 1e3:>10.2f} "
              f"{tp / tc:>8.1f}x{flag}")


def _same(a, b):
    if isinstance(a, tuple):
        return all(_same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b, equal_nan=(a.dtype.kind == "f"))
    if isinstance(a, float):
        return a == b or (math.isnan(a) and math.isnan(b))
    return a == b


if __name__ == "__main__":
    main()
