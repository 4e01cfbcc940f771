"""Shared fixtures and independent reference oracles.

The oracles here are deliberately primitive (pure-Python loops, cmath) and
never call into the package's kernel paths, so they stay valid as a second
opinion on whatever the kernels compute.
"""

import cmath

import numpy as np
import pytest

from mapeq import DNA, Alphabet, MappingTable, SymbolSequence


def ref_autocorr_circular(cols, max_lag):
    """Direct-summation circular lag profile: (1/N) sum_n <x(n), x((n-l)%N)>."""
    n_cols = len(cols)
    out = []
    for lag in range(max_lag + 1):
        acc = 0.0
        for n in range(n_cols):
            acc += sum(a * b for a, b in zip(cols[n], cols[(n - lag) % n_cols]))
        out.append(acc / n_cols)
    return out


def ref_autocorr_truncated(cols, max_lag):
    n_cols = len(cols)
    out = []
    for lag in range(max_lag + 1):
        acc = 0.0
        for n in range(lag, n_cols):
            acc += sum(a * b for a, b in zip(cols[n], cols[n - lag]))
        out.append(acc / n_cols)
    return out


def ref_spectrum(cols):
    """Naive DFT magnitude spectrum via cmath, (1/N^2) sum_d |X_d(m)|^2."""
    n_cols = len(cols)
    dim = len(cols[0])
    out = []
    for m in range(n_cols):
        total = 0.0
        for d in range(dim):
            z = sum(
                cols[k][d] * cmath.exp(-2j * cmath.pi * m * k / n_cols)
                for k in range(n_cols)
            )
            total += abs(z) ** 2
        out.append(total / n_cols**2)
    return out


def ref_pearson(a, b):
    n = len(a)
    ma = sum(a) / n
    mb = sum(b) / n
    num = sum((x - ma) * (y - mb) for x, y in zip(a, b))
    da = sum((x - ma) ** 2 for x in a) ** 0.5
    db = sum((y - mb) ** 2 for y in b) ** 0.5
    return num / (da * db)


def columns(encoded):
    """Encoded sequence as a list of per-position vectors (column order)."""
    return [encoded.columns[:, i].tolist() for i in range(encoded.length)]


def random_table(rng, alphabet=DNA, dim=4, name=None):
    vecs = rng.standard_normal((alphabet.size, dim))
    return MappingTable(alphabet, vecs, name=name)


def random_sequence(rng, n, alphabet=DNA):
    return SymbolSequence(alphabet, rng.integers(0, alphabet.size, size=n))


@pytest.fixture
def dna():
    return DNA


@pytest.fixture
def binary_alphabet():
    return Alphabet("AB")


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
