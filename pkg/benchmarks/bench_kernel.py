#!/usr/bin/env python3
"""Benchmark the compiled DP kernel against the pure-Python fallback.

Runs the modular Dyck-path sweep (the hot loop behind valuation profiles
and period detection) on the Morse weight at several sizes and prints the
per-backend timings and speedup.

Usage: python benchmarks/bench_kernel.py [--sizes 512,1024,2048,4096]
"""

import argparse
import sys
import time

from wcatalan import _dyck_py
from wcatalan.weights import WeightFunction

try:
    from wcatalan import _dyck_cy
except ImportError:
    _dyck_cy = None

MODULUS = 1 << 60


def bench(fn, bvals, n, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(bvals, n, MODULUS, None)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="512,1024,2048,4096")
    args = parser.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]

    morse = WeightFunction.preset("morse")
    print(f"modular Dyck-path DP, modulus 2^60, weight (2x+1)^2")
    header = f"{'n_max':>6}  {'pure (s)':>10}  {'cython (s)':>10}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        bvals = morse.values(0, n)
        t_pure, r_pure = bench(_dyck_py.dyck_dp_mod, bvals, n)
        if _dyck_cy is None:
            print(f"{n:>6}  {t_pure:>10.3f}  {'n/a':>10}  {'n/a':>8}")
            continue
        t_cy, r_cy = bench(_dyck_cy.dyck_dp_mod, bvals, n)
        assert r_pure == r_cy, "backends disagree"
        print(f"{n:>6}  {t_pure:>10.3f}  {t_cy:>10.3f}  {t_pure / t_cy:>7.1f}x")
    if _dyck_cy is None:
        print("compiled kernel not built; install with the extension to compare")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
