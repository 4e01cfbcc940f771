"""Alphabets, symbol sequences and symbol-to-vector mapping tables.

A mapping table assigns one real vector to every symbol of a finite, ordered
alphabet.  Encoding a symbol sequence under a table yields a vector sequence,
kept column-wise as an (dim x N) matrix.  The built-in catalog covers the
standard 4-base DNA tables used throughout the analysis: the indicator
(basis-vector) table, the signed paired table, the 1D purine/pyrimidine rule,
and two 4D tables used in the spectrum comparisons (one a pure rotation of
the indicator table, one not).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphabetMismatch,
    DimensionTooSmall,
    MappingFormatError,
    UnknownMapping,
)

__all__ = [
    "Alphabet",
    "SymbolSequence",
    "MappingTable",
    "EncodedSequence",
    "DNA",
    "builtin_mapping",
    "builtin_names",
    "encode",
    "embed",
    "mapping_from_json",
    "mapping_to_json",
    "transform_mapping",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct single-character symbols.

    Symbols are case-folded to upper case on ingestion; the index of a symbol
    is its position in the declared order, which makes encodings reproducible.
    """

    symbols: tuple[str, ...]

    def __init__(self, symbols):
        syms = tuple(str(s).upper() for s in symbols)
        if len(syms) == 0:
            raise MappingFormatError("alphabet must contain at least one symbol")
        if any(len(s) != 1 for s in syms):
            raise MappingFormatError("alphabet symbols must be single characters")
        if len(set(syms)) != len(syms):
            raise MappingFormatError(f"alphabet symbols not distinct: {''.join(syms)}")
        object.__setattr__(self, "symbols", syms)

    @property
    def size(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        """Index of a symbol, case-insensitively. KeyError if absent."""
        try:
            return self._lookup[symbol.upper()]
        except AttributeError:
            object.__setattr__(
                self, "_lookup", {s: i for i, s in enumerate(self.symbols)}
            )
            return self._lookup[symbol.upper()]

    def __contains__(self, symbol: str) -> bool:
        return symbol.upper() in self.symbols

    def __str__(self) -> str:
        return "".join(self.symbols)


DNA = Alphabet("ATGC")


@dataclass(frozen=True)
class SymbolSequence:
    """A sequence of symbol indices over a fixed alphabet."""

    alphabet: Alphabet
    data: np.ndarray  # int64 indices into alphabet.symbols

    def __init__(self, alphabet: Alphabet, data):
        idx = np.asarray(data, dtype=np.int64)
        if idx.ndim != 1:
            raise ValueError("sequence data must be one-dimensional")
        if idx.size and (idx.min() < 0 or idx.max() >= alphabet.size):
            raise ValueError("symbol index out of range for alphabet")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "data", _freeze(idx))

    @classmethod
    def from_text(cls, alphabet: Alphabet, text: str) -> "SymbolSequence":
        """Build from a string of symbols (case-insensitive)."""
        return cls(alphabet, [alphabet.index(c) for c in text])

    def __len__(self) -> int:
        return int(self.data.size)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SymbolSequence)
            and self.alphabet == other.alphabet
            and np.array_equal(self.data, other.data)
        )

    def text(self) -> str:
        """The sequence as a string of (upper-case) symbols."""
        syms = self.alphabet.symbols
        return "".join(syms[i] for i in self.data)


@dataclass(frozen=True)
class MappingTable:
    """One real vector of dimension ``dim`` per alphabet symbol.

    ``vectors`` has shape (alphabet.size, dim); row i is the image of
    symbol i.  All entries must be finite.
    """

    alphabet: Alphabet
    vectors: np.ndarray
    name: str | None = None

    def __init__(self, alphabet: Alphabet, vectors, name: str | None = None):
        arr = np.asarray(vectors, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] != alphabet.size:
            raise MappingFormatError(
                f"expected {alphabet.size} vectors, got array of shape {arr.shape}"
            )
        if arr.shape[1] < 1:
            raise MappingFormatError("mapping dimension must be >= 1")
        if not np.all(np.isfinite(arr)):
            raise MappingFormatError("mapping vectors must be finite")
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "vectors", _freeze(arr))
        object.__setattr__(self, "name", name)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def vector(self, symbol: str) -> np.ndarray:
        return self.vectors[self.alphabet.index(symbol)]

    def symbol_matrix(self) -> np.ndarray:
        """(dim x size) matrix whose columns are the symbol vectors."""
        return self.vectors.T.copy()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MappingTable)
            and self.alphabet == other.alphabet
            and np.array_equal(self.vectors, other.vectors)
        )

    @property
    def label(self) -> str:
        return self.name if self.name else "custom"


@dataclass(frozen=True)
class EncodedSequence:
    """Vector sequence as an (dim x N) matrix; column i encodes position i."""

    columns: np.ndarray

    def __init__(self, columns):
        arr = np.asarray(columns, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("encoded sequence must be a 2D (dim x N) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("encoded sequence entries must be finite")
        object.__setattr__(self, "columns", _freeze(arr))

    @property
    def dim(self) -> int:
        return int(self.columns.shape[0])

    @property
    def length(self) -> int:
        return int(self.columns.shape[1])


_SQ2 = 1.0 / math.sqrt(2.0)

_BUILTIN_TABLES: dict[str, tuple[list[list[float]], str]] = {
    # indicator table: each base to a distinct standard basis vector of R^4
    "voss": ([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], "4D indicator"),
    # signed pair table: A/T share an axis with opposite signs, G/C likewise
    "paired_pm": ([[-1, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, -1, 0, 0]], "signed pairs"),
    # purine/pyrimidine rule: A,G -> +1 and T,C -> -1
    "ry_1d": ([[1], [-1], [1], [-1]], "1D purine/pyrimidine"),
    # 4D unit-norm table that is NOT a rotation of the indicator table;
    # stored verbatim at the 4-decimal precision it is published with
    "fig7_m2": (
        [
            [0.9912, 0.1322, 0.0, 0.0],
            [0.8367, -0.239, 0.1195, 0.4781],
            [-0.7505, -0.5361, -0.2144, 0.3216],
            [0.7804, -0.5103, -0.2401, -0.2701],
        ],
        "4D non-rotation",
    ),
    # exact rotation of the indicator table
    "fig7_rot": (
        [
            [_SQ2, 0.0, _SQ2, 0.0],
            [0.0, _SQ2, 0.0, _SQ2],
            [-_SQ2, 0.0, _SQ2, 0.0],
            [0.0, -_SQ2, 0.0, _SQ2],
        ],
        "rotated indicator",
    ),
}


def builtin_names() -> tuple[str, ...]:
    return tuple(_BUILTIN_TABLES)


def builtin_mapping(name: str) -> MappingTable:
    """Return a built-in 4-base mapping table by name.

    Known names: voss, paired_pm, ry_1d, fig7_m2, fig7_rot.  Tables are
    constructed fresh on every call but always identical.
    """
    try:
        rows, _ = _BUILTIN_TABLES[name]
    except KeyError:
        raise UnknownMapping(
            f"unknown mapping {name!r}; built-ins: {', '.join(_BUILTIN_TABLES)}"
        ) from None
    return MappingTable(DNA, rows, name=name)


def encode(seq: SymbolSequence, table: MappingTable) -> EncodedSequence:
    """Apply a mapping table positionwise; column i is the vector of symbol i."""
    if seq.alphabet != table.alphabet:
        raise AlphabetMismatch(
            f"sequence alphabet {seq.alphabet} != mapping alphabet {table.alphabet}"
        )
    if len(seq) == 0:
        return EncodedSequence(np.empty((table.dim, 0)))
    return EncodedSequence(table.vectors[seq.data].T)


def embed(table: MappingTable, target_dim: int) -> MappingTable:
    """Zero-pad every symbol vector to ``target_dim`` trailing dimensions.

    Inner products between symbol vectors are preserved exactly, so all
    second-order operator profiles are unchanged by embedding.
    """
    if target_dim < table.dim:
        raise DimensionTooSmall(
            f"target dim {target_dim} < mapping dim {table.dim}"
        )
    if target_dim == table.dim:
        return table
    padded = np.zeros((table.alphabet.size, target_dim))
    padded[:, : table.dim] = table.vectors
    return MappingTable(table.alphabet, padded, name=table.name)


def transform_mapping(table: MappingTable, matrix, scale: float = 1.0,
                      name: str | None = None) -> MappingTable:
    """Table whose symbol vectors are ``scale * matrix @ v`` for each vector v."""
    m = np.asarray(matrix, dtype=np.float64)
    vecs = scale * (table.vectors @ m.T)
    return MappingTable(table.alphabet, vecs, name=name)


def mapping_from_json(doc: str | dict, name: str | None = None) -> MappingTable:
    """Load a mapping from a JSON document.

    Expected shape::

        {"alphabet": "ATGC", "dim": 4, "vectors": {"A": [1,0,0,0], ...}}

    Every vector must be an array of finite numbers of length ``dim``.
    """
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as e:
            raise MappingFormatError(f"invalid JSON: {e}") from None
    if not isinstance(doc, dict):
        raise MappingFormatError("mapping document must be a JSON object")
    try:
        alphabet = Alphabet(doc["alphabet"])
        dim = int(doc["dim"])
        raw = doc["vectors"]
    except KeyError as e:
        raise MappingFormatError(f"mapping document missing key {e}") from None
    if dim < 1:
        raise MappingFormatError("dim must be >= 1")
    vecs = np.zeros((alphabet.size, dim))
    seen = set()
    for sym, values in raw.items():
        key = sym.upper()
        if key not in alphabet:
            raise MappingFormatError(f"vector given for symbol {sym!r} not in alphabet")
        if key in seen:
            raise MappingFormatError(f"duplicate vector for symbol {sym!r}")
        seen.add(key)
        arr = np.asarray(values, dtype=np.float64)
        if arr.shape != (dim,):
            raise MappingFormatError(
                f"vector for {sym!r} has length {arr.size}, expected {dim}"
            )
        if not np.all(np.isfinite(arr)):
            raise MappingFormatError(f"vector for {sym!r} contains non-finite values")
        vecs[alphabet.index(key)] = arr
    missing = set(alphabet.symbols) - seen
    if missing:
        raise MappingFormatError(f"no vector for symbols: {''.join(sorted(missing))}")
    return MappingTable(alphabet, vecs, name=name or doc.get("name"))


def mapping_to_json(table: MappingTable) -> str:
    """Serialize a table to the JSON document accepted by mapping_from_json."""
    doc = {
        "alphabet": str(table.alphabet),
        "dim": table.dim,
        "vectors": {
            s: [float(v) for v in table.vectors[i]]
            for i, s in enumerate(table.alphabet.symbols)
        },
    }
    if table.name:
        doc["name"] = table.name
    return json.dumps(doc, indent=2)
