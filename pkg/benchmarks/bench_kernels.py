#!/usr/bin/env python3
"""Benchmark the compiled partition-table kernel against the pure-Python
reference, and the two series-multiplication paths.

Usage: python3 benchmarks/bench_kernels.py [--sizes 10000,100000,...]
"""

import argparse
import time

import numpy as np

from partcong import kernels, ntt
from partcong.qseries import partition_mod


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_partition(sizes, modulus=13):
    print(f"partition_table mod {modulus} "
          f"(compiled available: {kernels.HAVE_COMPILED})")
    print(f"{'n':>10} {'compiled/auto (s)':>18} {'reference (s)':>14} {'speedup':>8}")
    for n in sizes:
        t_fast, a = timeit(kernels.partition_table, n, modulus)
        t_ref, b = timeit(kernels.partition_table_reference, n, modulus,
                          repeat=1)
        assert np.array_equal(np.asarray(a), np.asarray(b)), "kernel mismatch"
        print(f"{n:>10} {t_fast:>18.4f} {t_ref:>14.4f} {t_ref / t_fast:>8.1f}x")


def bench_convolution(sizes, modulus=13):
    print(f"\nseries multiplication mod {modulus}")
    print(f"{'n':>10} {'NTT (s)':>10} {'schoolbook (s)':>15} {'speedup':>8}")
    rng = np.random.default_rng(0)
    for n in sizes:
        a = rng.integers(0, modulus, n)
        b = rng.integers(0, modulus, n)
        t_fast, x = timeit(ntt.convolve_mod_fast, a, b, modulus, n)
        t_school, y = timeit(ntt.convolve_mod_schoolbook, a, b, modulus, n,
                             repeat=1)
        assert np.array_equal(np.asarray(x), np.asarray(y)), "path mismatch"
        print(f"{n:>10} {t_fast:>10.4f} {t_school:>15.4f} "
              f"{t_school / t_fast:>8.1f}x")


def bench_methods(sizes, modulus=13):
    print(f"\npartition_mod method comparison mod {modulus}")
    print(f"{'n':>10} {'recurrence (s)':>15} {'inverse (s)':>12}")
    for n in sizes:
        t_rec, a = timeit(partition_mod, n, modulus, "recurrence")
        t_inv, b = timeit(partition_mod, n, modulus, "inverse", repeat=1)
        assert a == b, "method mismatch"
        print(f"{n:>10} {t_rec:>15.4f} {t_inv:>12.4f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="10000,50000,200000",
                    help="comma-separated table sizes")
    ap.add_argument("--conv-sizes", default="2000,8000,32000")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    conv = [int(s) for s in args.conv_sizes.split(",")]
    bench_partition(sizes)
    bench_convolution(conv)
    bench_methods([min(sizes), max(sizes)])


if __name__ == "__main__":
    main()
