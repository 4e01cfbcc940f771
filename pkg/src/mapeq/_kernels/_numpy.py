"""Pure-numpy kernel implementations (fallback path).

Same contracts as the numba twins in ``_numba``; selected with
``MAPEQ_BACKEND=numpy`` or automatically when numba is not installed.
"""

import numpy as np

# rows of the DFT matrix materialized per chunk, bounds memory at ~8 MB
_DFT_CHUNK = 256


def autocorr_circular(x, max_lag):
    """Lag sums S_l = sum_n <x(n), x((n-l) mod N)> for l = 0..max_lag.

    ``x`` is the (dim x N) column matrix; returns raw sums (no 1/N factor).
    """
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        out[lag] = np.vdot(x, np.roll(x, lag, axis=1))
    return out


def autocorr_truncated(x, max_lag):
    """Truncated lag sums S_l = sum_{n=l..N-1} <x(n), x(n-l)>."""
    n_cols = x.shape[1]
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        out[lag] = np.vdot(x[:, lag:], x[:, : n_cols - lag])
    return out


def weighted_autocorr_circular(x, weights, max_lag):
    """Weighted circular lag sums sum_n w_n <x(n), x((n-l) mod N)>."""
    wx = x * weights[None, :]
    out = np.empty(max_lag + 1)
    for lag in range(max_lag + 1):
        out[lag] = np.vdot(wx, np.roll(x, lag, axis=1))
    return out


def pair_counts_circular(idx, n_symbols, max_lag):
    """Counts[l, a, b] = #{n : idx[n] = a and idx[(n-l) mod N] = b}."""
    out = np.zeros((max_lag + 1, n_symbols, n_symbols), dtype=np.int64)
    for lag in range(max_lag + 1):
        np.add.at(out[lag], (idx, np.roll(idx, lag)), 1)
    return out


def dft_spectrum(x):
    """Naive-DFT magnitude spectrum: (1/N^2) * sum_d |DFT_m(x_d)|^2.

    Built from an explicitly materialized transform matrix, independently of
    any FFT routine, so it can serve as the reference path.
    """
    n_cols = x.shape[1]
    out = np.empty(n_cols)
    k = np.arange(n_cols)
    for start in range(0, n_cols, _DFT_CHUNK):
        m = np.arange(start, min(start + _DFT_CHUNK, n_cols))
        w = np.exp((-2j * np.pi / n_cols) * np.outer(m, k))
        coeff = x @ w.T  # (dim, m-chunk)
        out[m] = np.sum(coeff.real**2 + coeff.imag**2, axis=0)
    return out / float(n_cols) ** 2
