"""Numba-compiled kernel implementations (default path when numba is present).

Serial loops only: output must not depend on any parallel schedule.
Compiled artifacts are cached on disk, so the JIT cost is paid once.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def autocorr_circular(x, max_lag):
    dim, n_cols = x.shape
    out = np.zeros(max_lag + 1)
    for lag in range(max_lag + 1):
        acc = 0.0
        for n in range(n_cols):
            j = n - lag
            if j < 0:
                j += n_cols
            for d in range(dim):
                acc += x[d, n] * x[d, j]
        out[lag] = acc
    return out


@njit(cache=True)
def autocorr_truncated(x, max_lag):
    dim, n_cols = x.shape
    out = np.zeros(max_lag + 1)
    for lag in range(max_lag + 1):
        acc = 0.0
        for n in range(lag, n_cols):
            for d in range(dim):
                acc += x[d, n] * x[d, n - lag]
        out[lag] = acc
    return out


@njit(cache=True)
def weighted_autocorr_circular(x, weights, max_lag):
    dim, n_cols = x.shape
    out = np.zeros(max_lag + 1)
    for lag in range(max_lag + 1):
        acc = 0.0
        for n in range(n_cols):
            j = n - lag
            if j < 0:
                j += n_cols
            dot = 0.0
            for d in range(dim):
                dot += x[d, n] * x[d, j]
            acc += weights[n] * dot
        out[lag] = acc
    return out


@njit(cache=True)
def pair_counts_circular(idx, n_symbols, max_lag):
    n_cols = idx.shape[0]
    out = np.zeros((max_lag + 1, n_symbols, n_symbols), dtype=np.int64)
    for lag in range(max_lag + 1):
        for n in range(n_cols):
            j = n - lag
            if j < 0:
                j += n_cols
            out[lag, idx[n], idx[j]] += 1
    return out


@njit(cache=True)
def dft_spectrum(x):
    # twiddle factors tabulated once; exponent index advances mod N, which
    # keeps the angle argument exact instead of growing as m*k
    dim, n_cols = x.shape
    out = np.zeros(n_cols)
    base = -2.0 * np.pi / n_cols
    cos_t = np.empty(n_cols)
    sin_t = np.empty(n_cols)
    for k in range(n_cols):
        cos_t[k] = np.cos(base * k)
        sin_t[k] = np.sin(base * k)
    for m in range(n_cols):
        total = 0.0
        for d in range(dim):
            re = 0.0
            im = 0.0
            idx = 0
            for k in range(n_cols):
                re += x[d, k] * cos_t[idx]
                im += x[d, k] * sin_t[idx]
                idx += m
                if idx >= n_cols:
                    idx -= n_cols
            total += re * re + im * im
        out[m] = total
    return out / float(n_cols) ** 2
