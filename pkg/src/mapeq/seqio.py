"""FASTA ingestion and seeded synthetic sequence generation.

Parsing folds residues to upper case and validates against the target
alphabet.  Residues outside the alphabet (including IUPAC ambiguity codes
such as 'N', which real GenBank records contain in runs) either abort the
parse (``strict``) or are dropped with a per-record count (``skip_unknown``,
the default).

Generation draws from a named, portable PRNG (numpy PCG64 via
``default_rng``) using one uniform per position mapped through the inverse
CDF, so identical specs reproduce identical sequences.
"""

from __future__ import annotations

import gzip
import io
import logging
from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDistribution,
    LengthOutOfRange,
    MalformedFasta,
    UnknownResidue,
)
from .mapping import Alphabet, SymbolSequence

__all__ = [
    "FastaRecord",
    "GeneratorSpec",
    "parse_fasta",
    "read_fasta",
    "write_fasta",
    "format_fasta",
    "generate",
    "generator_id",
    "prefix",
]

log = logging.getLogger(__name__)

PARSE_POLICIES = ("strict", "skip_unknown")


@dataclass(frozen=True)
class FastaRecord:
    """One FASTA record: header text (after '>') and its parsed sequence."""

    id: str
    sequence: SymbolSequence
    skipped: int = 0  # residues dropped under skip_unknown


def parse_fasta(source, alphabet: Alphabet, policy: str = "skip_unknown"):
    """Parse FASTA text into a list of FastaRecord.

    ``source`` may be a string or a text stream.  Whitespace and line breaks
    inside sequences are ignored.  ``strict`` raises UnknownResidue (with
    symbol and 1-based position) on any residue outside the alphabet;
    ``skip_unknown`` drops such residues and records the count.
    """
    if policy not in PARSE_POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if isinstance(source, str):
        source = io.StringIO(source)
    records = []
    header = None
    indices: list[int] = []
    position = 0
    skipped = 0

    def flush():
        nonlocal header, indices, position, skipped
        if header is not None:
            if not indices:
                raise MalformedFasta(f"record {header!r} has no residues")
            if skipped:
                log.info("record %r: skipped %d unknown residues", header, skipped)
            records.append(
                FastaRecord(header, SymbolSequence(alphabet, indices), skipped)
            )
        header, indices, position, skipped = None, [], 0, 0

    for line in source:
        line = line.strip()
        if not line:
            continue
        if line.startswith(">"):
            flush()
            header = line[1:].strip()
            continue
        if header is None:
            raise MalformedFasta("residues before any '>' header")
        for ch in line:
            if ch.isspace():
                continue
            position += 1
            try:
                indices.append(alphabet.index(ch))
            except KeyError:
                if policy == "strict":
                    raise UnknownResidue(
                        f"residue {ch.upper()!r} at position {position} of "
                        f"record {header!r} not in alphabet {alphabet}"
                    ) from None
                skipped += 1
    flush()
    return records


def read_fasta(path, alphabet: Alphabet, policy: str = "skip_unknown"):
    """parse_fasta over a file; gzip-compressed input accepted for *.gz."""
    opener = gzip.open if str(path).endswith(".gz") else open
    with opener(path, "rt") as fh:
        return parse_fasta(fh, alphabet, policy)


def format_fasta(records, width: int = 70) -> str:
    buf = io.StringIO()
    for rec in records:
        buf.write(f">{rec.id}\n")
        text = rec.sequence.text()
        for start in range(0, len(text), width):
            buf.write(text[start : start + width])
            buf.write("\n")
    return buf.getvalue()


def write_fasta(records, path, width: int = 70):
    with open(path, "w", newline="") as fh:
        fh.write(format_fasta(records, width))


def _validate_distribution(vec, size, what) -> np.ndarray:
    arr = np.asarray(vec, dtype=np.float64)
    if arr.shape != (size,):
        raise InvalidDistribution(f"{what} must have {size} entries")
    if np.any(arr < 0) or not np.all(np.isfinite(arr)):
        raise InvalidDistribution(f"{what} entries must be finite and nonnegative")
    if abs(arr.sum() - 1.0) > 1e-12:
        raise InvalidDistribution(f"{what} must sum to 1 (got {arr.sum()!r})")
    return arr


@dataclass(frozen=True)
class GeneratorSpec:
    """Specification of a synthetic sequence: iid or first-order Markov.

    iid requires ``probs`` (one probability per symbol); markov requires a
    row-stochastic ``transition`` matrix and optionally an ``initial``
    distribution (uniform when omitted).
    """

    kind: str
    alphabet: Alphabet
    length: int
    seed: int
    probs: tuple | None = None
    transition: tuple | None = None
    initial: tuple | None = None

    def __init__(self, kind, alphabet, length, seed, probs=None,
                 transition=None, initial=None):
        if kind not in ("iid", "markov"):
            raise InvalidDistribution(f"unknown generator kind {kind!r}")
        if length < 0:
            raise InvalidDistribution("length must be nonnegative")
        size = alphabet.size
        if kind == "iid":
            if probs is None:
                raise InvalidDistribution("iid generator requires probs")
            probs = tuple(_validate_distribution(probs, size, "probs"))
        else:
            if transition is None:
                raise InvalidDistribution("markov generator requires a transition matrix")
            t = np.asarray(transition, dtype=np.float64)
            if t.shape != (size, size):
                raise InvalidDistribution(f"transition must be {size}x{size}")
            rows = tuple(
                tuple(_validate_distribution(t[i], size, f"transition row {i}"))
                for i in range(size)
            )
            transition = rows
            if initial is None:
                initial = tuple(np.full(size, 1.0 / size))
            initial = tuple(_validate_distribution(initial, size, "initial"))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "length", int(length))
        object.__setattr__(self, "seed", int(seed))
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "transition", transition)
        object.__setattr__(self, "initial", initial)

    @classmethod
    def uniform_iid(cls, alphabet: Alphabet, length: int, seed: int):
        size = alphabet.size
        return cls("iid", alphabet, length, seed, probs=[1.0 / size] * size)

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GeneratorSpec":
        return cls(
            doc.get("kind", "iid"),
            Alphabet(doc["alphabet"]),
            doc["length"],
            doc.get("seed", 0),
            probs=doc.get("probs"),
            transition=doc.get("transition"),
            initial=doc.get("initial"),
        )


def generator_id() -> str:
    """Identity of the PRNG behind generate(), recorded in output metadata."""
    return f"numpy-PCG64-{np.__version__}"


def _inverse_cdf(dist: np.ndarray) -> np.ndarray:
    cum = np.cumsum(dist)
    cum[-1] = 1.0  # guard against roundoff at the top boundary
    return cum


def generate(spec: GeneratorSpec) -> SymbolSequence:
    """Draw the sequence described by spec; pure function of the spec."""
    rng = np.random.default_rng(spec.seed)
    u = rng.random(spec.length)
    if spec.length == 0:
        return SymbolSequence(spec.alphabet, [])
    if spec.kind == "iid":
        cum = _inverse_cdf(np.asarray(spec.probs))
        data = np.searchsorted(cum, u, side="right")
        return SymbolSequence(spec.alphabet, data)
    cums = np.stack([_inverse_cdf(np.asarray(row)) for row in spec.transition])
    init_cum = _inverse_cdf(np.asarray(spec.initial))
    data = np.empty(spec.length, dtype=np.int64)
    data[0] = np.searchsorted(init_cum, u[0], side="right")
    for i in range(1, spec.length):
        data[i] = np.searchsorted(cums[data[i - 1]], u[i], side="right")
    return SymbolSequence(spec.alphabet, data)


def prefix(seq: SymbolSequence, n: int) -> SymbolSequence:
    """First n symbols; n must lie in [1, len(seq)]."""
    if not 1 <= n <= len(seq):
        raise LengthOutOfRange(f"prefix length {n} outside [1, {len(seq)}]")
    return SymbolSequence(seq.alphabet, seq.data[:n])
