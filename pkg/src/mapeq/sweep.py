"""End-to-end experiment engine: consistency-vs-length sweeps and profile runs.

A sweep takes one input sequence (FASTA file or synthetic generator), a pair
of mappings and an operator, then for each prefix length N computes both
operator profiles and the three consistency metrics between them.  Rows are
a pure function of the configuration, seed included, so reruns produce
byte-identical CSV.

Index-exclusion policy for the Pearson metric: spectrum comparisons drop the
DC bin by default (affine shifts between mappings contaminate only DC) while
correlation comparisons keep all lags; both choices can be overridden and
are recorded in the report metadata.  Extrema and sign metrics always use
the full grid.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

import numpy as np

from .equivalence import (
    TIE_RTOL,
    ConsistencyReport,
    ReportRow,
    extrema_preservation,
    pearson_consistency,
    sign_agreement,
    write_report_csv,
)
from .errors import DegenerateProfile, MapeqError, UnknownMapping
from .mapping import (
    MappingTable,
    SymbolSequence,
    builtin_mapping,
    builtin_names,
    encode,
    mapping_from_json,
)
from .operators import (
    autocorrelation,
    magnitude_spectrum,
    write_profile_csv,
)
from .seqio import GeneratorSpec, generate, generator_id, prefix, read_fasta

__all__ = [
    "SweepConfig",
    "resolve_mapping",
    "default_max_lag",
    "consistency_rows",
    "run_sweep",
    "run_profile",
]

OPERATORS = ("correlation", "spectrum")

# CLI cap on lag grids; the library takes max_lag explicitly
DEFAULT_LAG_CAP = 1000


def default_max_lag(n: int, cap: int = DEFAULT_LAG_CAP) -> int:
    return min(n - 1, cap)


def resolve_mapping(source: str) -> MappingTable:
    """Mapping from a built-in name or a JSON file path."""
    if source in builtin_names():
        return builtin_mapping(source)
    if os.path.exists(source):
        with open(source) as fh:
            name = os.path.splitext(os.path.basename(source))[0]
            return mapping_from_json(fh.read(), name=name)
    raise UnknownMapping(
        f"{source!r} is neither a built-in mapping nor an existing JSON file"
    )


@dataclass(frozen=True)
class SweepConfig:
    """Everything a sweep depends on; the report is a pure function of this."""

    mapping1: str
    mapping2: str
    operator: str = "correlation"
    fasta: str | None = None
    generator: GeneratorSpec | None = None
    lengths: tuple[int, ...] | None = None
    n_min: int = 128
    n_max: int | None = None  # defaults to the input sequence length
    factor: float = 2.0
    boundary: str = "circular"
    max_lag: int | None = None  # None: min(N - 1, 1000) per row
    exclude_dc: bool = True
    exclude_lag0: bool = False
    seed: int = 0
    out: str | None = None

    @classmethod
    def from_json_dict(cls, doc: dict) -> "SweepConfig":
        doc = dict(doc)
        gen = doc.get("generator")
        if gen is not None:
            doc["generator"] = GeneratorSpec.from_json_dict(gen)
        if doc.get("lengths") is not None:
            doc["lengths"] = tuple(int(n) for n in doc["lengths"])
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(doc) - known
        if unknown:
            raise MapeqError(f"unknown sweep config keys: {sorted(unknown)}")
        return cls(**doc)

    @classmethod
    def from_json_file(cls, path) -> "SweepConfig":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))

    def override(self, **kwargs) -> "SweepConfig":
        set_kwargs = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **set_kwargs)


def _load_input(cfg: SweepConfig, alphabet) -> tuple[SymbolSequence, str]:
    if (cfg.fasta is None) == (cfg.generator is None):
        raise MapeqError("exactly one of fasta / generator must be given")
    if cfg.fasta is not None:
        records = read_fasta(cfg.fasta, alphabet)
        if not records:
            raise MapeqError(f"no records in {cfg.fasta}")
        return records[0].sequence, os.path.basename(cfg.fasta)
    spec = cfg.generator
    if spec.seed != cfg.seed:
        spec = GeneratorSpec(spec.kind, spec.alphabet, spec.length, cfg.seed,
                             probs=spec.probs, transition=spec.transition,
                             initial=spec.initial)
    return generate(spec), f"generated:{spec.kind}"


def _schedule(cfg: SweepConfig, seq_len: int) -> tuple[int, ...]:
    if cfg.lengths is not None:
        lengths = tuple(int(n) for n in cfg.lengths)
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise MapeqError("lengths must be strictly increasing")
        if lengths[-1] > seq_len:
            raise MapeqError(
                f"largest length {lengths[-1]} exceeds input length {seq_len}"
            )
        return lengths
    n_max = seq_len if cfg.n_max is None else cfg.n_max
    if n_max > seq_len:
        raise MapeqError(f"n_max {n_max} exceeds input length {seq_len}")
    if cfg.factor <= 1.0:
        raise MapeqError("geometric factor must be > 1")
    if cfg.n_min < 3 or cfg.n_min > n_max:
        raise MapeqError(f"n_min {cfg.n_min} outside [3, {n_max}]")
    lengths = []
    n = float(cfg.n_min)
    while round(n) <= n_max:
        if not lengths or round(n) > lengths[-1]:
            lengths.append(int(round(n)))
        n *= cfg.factor
    if lengths[-1] != n_max:
        lengths.append(n_max)
    return tuple(lengths)


def _profiles(pre, t1, t2, cfg: SweepConfig):
    x1 = encode(pre, t1)
    x2 = encode(pre, t2)
    if cfg.operator == "correlation":
        lag = cfg.max_lag if cfg.max_lag is not None else default_max_lag(len(pre))
        return (
            autocorrelation(x1, lag, cfg.boundary),
            autocorrelation(x2, lag, cfg.boundary),
        )
    return magnitude_spectrum(x1), magnitude_spectrum(x2)


def _exclusions(cfg: SweepConfig) -> frozenset:
    if cfg.operator == "spectrum" and cfg.exclude_dc:
        return frozenset({0})
    if cfg.operator == "correlation" and cfg.exclude_lag0:
        return frozenset({0})
    return frozenset()


def _exclusion_label(cfg: SweepConfig) -> str:
    if cfg.operator == "spectrum":
        return "dc" if cfg.exclude_dc else "none"
    return "lag0" if cfg.exclude_lag0 else "none"


def consistency_rows(seq: SymbolSequence, t1: MappingTable, t2: MappingTable,
                     cfg: SweepConfig, lengths) -> list[ReportRow]:
    """One ReportRow per length; rows are independent of evaluation order.

    A degenerate Pearson denominator (constant profile) flags the row
    instead of aborting the sweep.
    """
    exclude = _exclusions(cfg)
    rows = []
    for n in lengths:
        pre = prefix(seq, n)
        p, q = _profiles(pre, t1, t2, cfg)
        try:
            rho = pearson_consistency(p, q, exclude)
            degenerate = False
        except DegenerateProfile:
            rho = 0.0
            degenerate = True
        rows.append(
            ReportRow(
                n,
                rho,
                extrema_preservation(p, q),
                sign_agreement(p, q),
                degenerate,
            )
        )
    return rows


def run_sweep(cfg: SweepConfig) -> ConsistencyReport:
    """Execute a sweep; writes the report CSV when cfg.out is set."""
    if cfg.operator not in OPERATORS:
        raise MapeqError(f"unknown operator {cfg.operator!r}")
    t1 = resolve_mapping(cfg.mapping1)
    t2 = resolve_mapping(cfg.mapping2)
    if t1.alphabet != t2.alphabet:
        raise MapeqError("sweep mappings must share an alphabet")
    seq, input_label = _load_input(cfg, t1.alphabet)
    lengths = _schedule(cfg, len(seq))
    rows = consistency_rows(seq, t1, t2, cfg, lengths)
    meta = {
        "mapping1": t1.label,
        "mapping2": t2.label,
        "operator": cfg.operator,
        "boundary": cfg.boundary if cfg.operator == "correlation" else "circular",
        "exclude": _exclusion_label(cfg),
        "seed": cfg.seed,
        "generator": generator_id() if cfg.generator is not None else "none",
        "input": input_label,
        "max_lag": cfg.max_lag if cfg.max_lag is not None else
                   f"min(N-1,{DEFAULT_LAG_CAP})",
        # extremum convention (interior points, non-strict, reference = mapping1)
        "extrema": f"nonstrict directional tie_rtol={TIE_RTOL:g}",
    }
    report = ConsistencyReport(tuple(rows), meta)
    if cfg.out:
        write_report_csv(report, cfg.out)
    return report


def run_profile(seq: SymbolSequence, table: MappingTable, operator: str,
                out, max_lag: int | None = None, boundary: str = "circular",
                also_naive: bool = False):
    """Compute one profile and write its CSV.

    For the spectrum operator, ``also_naive=True`` additionally evaluates
    the naive-DFT reference path, writes it beside the FFT output (suffix
    ``.naive.csv``) and verifies the two agree to 1e-9 relative.
    Returns (profile, naive_profile_or_None).
    """
    x = encode(seq, table)
    if operator == "correlation":
        lag = max_lag if max_lag is not None else default_max_lag(len(seq))
        profile = autocorrelation(x, lag, boundary)
        naive = None
    elif operator == "spectrum":
        profile = magnitude_spectrum(x, method="fft")
        naive = magnitude_spectrum(x, method="naive") if also_naive else None
    else:
        raise MapeqError(f"unknown operator {operator!r}")
    if out:
        write_profile_csv(profile, out, mapping=table.label)
    if naive is not None:
        scale = float(np.max(np.abs(naive.values))) or 1.0
        if not np.allclose(profile.values, naive.values,
                           rtol=1e-9, atol=1e-12 * scale):
            raise MapeqError("FFT and naive-DFT spectra disagree beyond 1e-9")
        if out:
            root, ext = os.path.splitext(str(out))
            write_profile_csv(naive, f"{root}.naive{ext or '.csv'}",
                              mapping=table.label)
    return profile, naive
