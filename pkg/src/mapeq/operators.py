"""Second-order operator profiles over encoded sequences.

All operators here are quadratic forms in the encoded columns, which is what
makes their profiles invariant (up to scale) under orthogonal re-mappings:

* ``autocorrelation`` -- lag profile r_l = (1/N) sum_n <x(n), x(n-l)>, with
  circular (mod-N) or truncated boundary handling.
* ``magnitude_spectrum`` -- per-frequency squared DFT magnitude summed over
  vector dimensions, scaled by 1/N^2; FFT main path plus a naive-DFT
  reference path for cross-checking.
* ``weighted_correlation`` -- the banded-Hessian operator family
  phi_l = (1/2) sgn(k_0) sum_n |k_n| <x(n), x(n-l)>.
* ``pair_count_decomposition`` -- r_l regrouped as (1/N) sum_{a,b}
  count_l(a,b) <f(a), f(b)>; an exact bookkeeping identity used as an
  independent verification oracle.

The circular boundary is the default everywhere: it gives exactly N terms
per lag, which is what the pair-count identity assumes.  Both boundary modes
divide by N (biased normalization).
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from types import MappingProxyType

import numpy as np

from . import _kernels as kernels
from .errors import (
    EmptySequence,
    LagOutOfRange,
    WeightLengthMismatch,
)
from .mapping import Alphabet, EncodedSequence, MappingTable, SymbolSequence

__all__ = [
    "Profile",
    "WeightedOperatorSpec",
    "PairCountTable",
    "autocorrelation",
    "magnitude_spectrum",
    "weighted_correlation",
    "pair_count_decomposition",
    "write_profile_csv",
    "profile_csv_text",
    "read_profile_csv",
]

PROFILE_KINDS = ("correlation", "spectrum", "weighted")


def _freeze(a):
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Profile:
    """Operator output values on a strictly increasing integer index grid."""

    kind: str
    params: np.ndarray  # lags l or frequency bins m
    values: np.ndarray
    meta: MappingProxyType

    def __init__(self, kind, params, values, meta=None):
        if kind not in PROFILE_KINDS:
            raise ValueError(f"unknown profile kind {kind!r}")
        p = np.asarray(params, dtype=np.int64)
        v = np.asarray(values, dtype=np.float64)
        if p.ndim != 1 or p.shape != v.shape:
            raise ValueError("params and values must be 1D arrays of equal length")
        if p.size > 1 and not np.all(np.diff(p) > 0):
            raise ValueError("params must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ValueError("profile values must be finite")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "params", _freeze(p))
        object.__setattr__(self, "values", _freeze(v))
        object.__setattr__(self, "meta", MappingProxyType(dict(meta or {})))

    def __len__(self) -> int:
        return int(self.params.size)

    def same_grid(self, other: "Profile") -> bool:
        return np.array_equal(self.params, other.params)


@dataclass(frozen=True)
class WeightedOperatorSpec:
    """Weights k_0..k_{N-1} of the banded second-order operator family."""

    weights: np.ndarray

    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a nonempty 1D array")
        if not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite")
        if not np.any(w != 0.0):
            raise ValueError("at least one weight must be nonzero")
        object.__setattr__(self, "weights", _freeze(w))


@dataclass(frozen=True)
class PairCountTable:
    """Ordered symbol-pair counts at one lag (circular boundary).

    ``counts[a, b]`` is the number of positions n with seq[n] = a and
    seq[(n - lag) mod N] = b; the counts always sum to N.
    """

    lag: int
    alphabet: Alphabet
    counts: np.ndarray

    def __init__(self, lag, alphabet, counts):
        c = np.asarray(counts, dtype=np.int64)
        if c.shape != (alphabet.size, alphabet.size):
            raise ValueError("counts must be (size x size) for the alphabet")
        if np.any(c < 0):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "lag", int(lag))
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "counts", _freeze(c))

    def count(self, a: str, b: str) -> int:
        return int(self.counts[self.alphabet.index(a), self.alphabet.index(b)])

    def total(self) -> int:
        return int(self.counts.sum())


def _sign(t: float) -> float:
    # sgn(0) = +1 by convention
    return 1.0 if t >= 0.0 else -1.0


def _check_lag_args(x: EncodedSequence, max_lag: int):
    if x.length == 0:
        raise EmptySequence("operator requires a nonempty sequence")
    if not 0 <= max_lag <= x.length - 1:
        raise LagOutOfRange(f"max_lag {max_lag} outside [0, {x.length - 1}]")


def autocorrelation(x: EncodedSequence, max_lag: int,
                    boundary: str = "circular") -> Profile:
    """Lag correlation profile r_l for l = 0..max_lag.

    Circular mode wraps the shifted index mod N (N terms per lag); truncated
    mode sums n = l..N-1.  Both divide by N.
    """
    _check_lag_args(x, max_lag)
    if boundary == "circular":
        sums = kernels.autocorr_circular(x.columns, max_lag)
    elif boundary == "truncated":
        sums = kernels.autocorr_truncated(x.columns, max_lag)
    else:
        raise ValueError(f"unknown boundary mode {boundary!r}")
    return Profile(
        "correlation",
        np.arange(max_lag + 1),
        sums / x.length,
        meta={"N": x.length, "boundary": boundary},
    )


def magnitude_spectrum(x: EncodedSequence, method: str = "fft") -> Profile:
    """Magnitude spectrum f_m = (1/N^2) sum_d |sum_k x_d(k) e^{-2pi j m k / N}|^2.

    ``method='fft'`` is the production path; ``method='naive'`` evaluates the
    transform sums directly and exists to cross-check the FFT path.
    """
    if x.length == 0:
        raise EmptySequence("operator requires a nonempty sequence")
    if method == "fft":
        coeff = np.fft.fft(x.columns, axis=1)
        vals = np.sum(coeff.real**2 + coeff.imag**2, axis=0) / float(x.length) ** 2
    elif method == "naive":
        vals = kernels.dft_spectrum(x.columns)
    else:
        raise ValueError(f"unknown spectrum method {method!r}")
    return Profile(
        "spectrum",
        np.arange(x.length),
        vals,
        meta={"N": x.length, "boundary": "circular", "method": method},
    )


def weighted_correlation(x: EncodedSequence, spec: WeightedOperatorSpec,
                         max_lag: int) -> Profile:
    """Banded-operator profile phi_l = (1/2) sgn(k_0) sum_n |k_n| <x(n), x(n-l)>.

    Circular indexing; the weight vector must have one entry per position.
    """
    if x.length == 0:
        raise EmptySequence("operator requires a nonempty sequence")
    if spec.weights.size != x.length:
        raise WeightLengthMismatch(
            f"{spec.weights.size} weights for sequence of length {x.length}"
        )
    if not 0 <= max_lag <= x.length - 1:
        raise LagOutOfRange(f"max_lag {max_lag} outside [0, {x.length - 1}]")
    sums = kernels.weighted_autocorr_circular(
        x.columns, np.abs(spec.weights), max_lag
    )
    vals = 0.5 * _sign(spec.weights[0]) * sums
    return Profile(
        "weighted",
        np.arange(max_lag + 1),
        vals,
        meta={"N": x.length, "boundary": "circular"},
    )


def pair_count_decomposition(seq: SymbolSequence, table: MappingTable,
                             max_lag: int):
    """Pair-count tables per lag plus the profile they reconstruct.

    The reconstruction (1/N) sum_{a,b} count_l(a,b) <f(a), f(b)> groups the
    autocorrelation sum by ordered symbol pair; it must agree with
    ``autocorrelation`` to roundoff (same arithmetic, different grouping).
    Circular boundary only.
    """
    n = len(seq)
    if n == 0:
        raise EmptySequence("operator requires a nonempty sequence")
    if not 0 <= max_lag <= n - 1:
        raise LagOutOfRange(f"max_lag {max_lag} outside [0, {n - 1}]")
    counts = kernels.pair_counts_circular(seq.data, seq.alphabet.size, max_lag)
    gram = table.vectors @ table.vectors.T
    values = np.tensordot(counts.astype(np.float64), gram, axes=([1, 2], [0, 1])) / n
    tables = [
        PairCountTable(lag, seq.alphabet, counts[lag]) for lag in range(max_lag + 1)
    ]
    profile = Profile(
        "correlation",
        np.arange(max_lag + 1),
        values,
        meta={
            "N": n,
            "boundary": "circular",
            "mapping": table.label,
            "method": "pair_counts",
        },
    )
    return tables, profile


# --- CSV serialization ----------------------------------------------------

def profile_csv_text(profile: Profile, mapping: str | None = None) -> str:
    """Render a profile as CSV with a metadata comment line."""
    meta = profile.meta
    name = mapping if mapping is not None else meta.get("mapping", "custom")
    buf = io.StringIO()
    buf.write(
        f"# kind={profile.kind},N={meta.get('N', len(profile))},"
        f"mapping={name},boundary={meta.get('boundary', 'circular')}\n"
    )
    buf.write("index,value\n")
    for p, v in zip(profile.params, profile.values):
        buf.write(f"{int(p)},{float(v)!r}\n")
    return buf.getvalue()


def write_profile_csv(profile: Profile, path, mapping: str | None = None):
    with open(path, "w", newline="") as fh:
        fh.write(profile_csv_text(profile, mapping))


def read_profile_csv(path) -> Profile:
    """Parse a profile CSV written by write_profile_csv."""
    meta = {}
    params = []
    values = []
    with open(path, "r", newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                for item in line.lstrip("# ").split(","):
                    if "=" in item:
                        k, v = item.split("=", 1)
                        meta[k.strip()] = v.strip()
                continue
            if line == "index,value":
                continue
            p, v = line.split(",")
            params.append(int(p))
            values.append(float(v))
    kind = meta.pop("kind", "correlation")
    if "N" in meta:
        meta["N"] = int(meta["N"])
    return Profile(kind, params, values, meta=meta)
