#!/usr/bin/env python3
"""Timing comparison of the numba and pure-numpy kernel backends.

Usage: python benchmarks/bench_kernels.py [--repeat 5]

Imports both backend modules directly (no env flag needed) and times the
hot kernels on representative workloads.  The first numba call per kernel
includes JIT compilation unless a disk cache is already warm; a warmup call
is issued before timing.
"""

import argparse
import time

import numpy as np

from mapeq._kernels import _numpy as np_impl

try:
    from mapeq._kernels import _numba as nb_impl
except ImportError:
    nb_impl = None


def bench(fn, args, repeat):
    fn(*args)  # warmup (JIT compile / cache load)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x_small = np.ascontiguousarray(rng.standard_normal((4, 1024)))
    x_large = np.ascontiguousarray(rng.standard_normal((4, 8192)))
    idx = rng.integers(0, 4, size=8192)
    weights = np.abs(rng.standard_normal(8192))

    cases = [
        ("autocorr_circular  (4x1024, 1000 lags)", "autocorr_circular",
         (x_small, 1000)),
        ("autocorr_circular  (4x8192, 1000 lags)", "autocorr_circular",
         (x_large, 1000)),
        ("autocorr_truncated (4x8192, 1000 lags)", "autocorr_truncated",
         (x_large, 1000)),
        ("weighted_autocorr  (4x8192, 1000 lags)", "weighted_autocorr_circular",
         (x_large, weights, 1000)),
        ("pair_counts        (N=8192, 1000 lags)", "pair_counts_circular",
         (idx, 4, 1000)),
        ("dft_spectrum       (4x1024)", "dft_spectrum", (x_small,)),
    ]

    print(f"{'kernel':44s} {'numpy':>10s} {'numba':>10s} {'speedup':>8s}")
    for label, name, call_args in cases:
        t_np = bench(getattr(np_impl, name), call_args, args.repeat)
        if nb_impl is None:
            print(f"{label:44s} {t_np * 1e3:9.2f}ms {'n/a':>10s}")
            continue
        t_nb = bench(getattr(nb_impl, name), call_args, args.repeat)
        print(
            f"{label:44s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms "
            f"{t_np / t_nb:7.1f}x"
        )
    if nb_impl is None:
        print("numba backend unavailable; install with: pip install 'mapeq[accel]'")


if __name__ == "__main__":
    main()
