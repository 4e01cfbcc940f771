"""Formal series over the free monoid of an alphabet.

A series is a finitely supported assignment of coefficients to words
(including the empty word, which acts as the multiplicative unit).  Addition
is coefficientwise, multiplication distributes coefficients over all
concatenations -- the free-monoid generalization of discrete convolution,
to which it degenerates on a one-symbol alphabet.  Coefficients may be
Python ints (exact arithmetic, used by the algebraic-law test suite) or
floats; operations preserve intness.

Two series are scalar-equivalent when one is a nonzero scalar multiple of
the other: the scalar units c*eps are the invertible scale changes, so this
is the algebraic rendering of "same up to reversible scaling".
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType

from .errors import AlphabetMismatch, SupportOverflow
from .mapping import Alphabet

__all__ = [
    "Word",
    "EPSILON",
    "FormalSeries",
    "add",
    "mul",
    "scalar",
    "scalar_equivalent",
    "series_text",
    "parse_series",
    "MAX_PRODUCT_TERMS",
]

Word = tuple[int, ...]
EPSILON: Word = ()

# default guard on product support size; formal series grow multiplicatively
MAX_PRODUCT_TERMS = 10**6


def _word_key(w: Word):
    # length-lexicographic canonical order
    return (len(w), w)


@dataclass(frozen=True)
class FormalSeries:
    """Finitely supported coefficient map over free-monoid words.

    Canonical form: zero coefficients are never stored.  Words are tuples of
    symbol indices into the alphabet; ``()`` is the empty word.
    """

    alphabet: Alphabet
    terms: MappingProxyType

    def __init__(self, alphabet: Alphabet, terms=None):
        clean = {}
        for word, coeff in (terms or {}).items():
            w = tuple(int(i) for i in word)
            if any(i < 0 or i >= alphabet.size for i in w):
                raise ValueError(f"word {w} has indices outside the alphabet")
            if coeff != 0:
                clean[w] = clean.get(w, 0) + coeff
        clean = {w: c for w, c in clean.items() if c != 0}
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "terms", MappingProxyType(clean))

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "FormalSeries":
        return cls(alphabet, {})

    @classmethod
    def unit(cls, alphabet: Alphabet, coeff=1) -> "FormalSeries":
        """The series coeff * eps."""
        return cls(alphabet, {EPSILON: coeff})

    @classmethod
    def from_words(cls, alphabet: Alphabet, terms: dict) -> "FormalSeries":
        """Build from {word-string: coeff}; '' denotes the empty word."""
        idx = {
            tuple(alphabet.index(c) for c in word): coeff
            for word, coeff in terms.items()
        }
        return cls(alphabet, idx)

    def coeff(self, word):
        if isinstance(word, str):
            word = tuple(self.alphabet.index(c) for c in word)
        return self.terms.get(tuple(word), 0)

    def word_text(self, word: Word) -> str:
        return "".join(self.alphabet.symbols[i] for i in word)

    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> list[Word]:
        return sorted(self.terms, key=_word_key)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormalSeries)
            and self.alphabet == other.alphabet
            and dict(self.terms) == dict(other.terms)
        )

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, FormalSeries):
            return mul(self, other)
        return scalar(other, self)

    def __rmul__(self, other):
        return scalar(other, self)

    def __neg__(self):
        return scalar(-1, self)

    def __sub__(self, other):
        return add(self, scalar(-1, other))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.support():
            c = self.terms[w]
            parts.append(f"{c}" if w == EPSILON else f"{c}*{self.word_text(w)}")
        return " + ".join(parts)


def _check_same_alphabet(f: FormalSeries, g: FormalSeries):
    if f.alphabet != g.alphabet:
        raise AlphabetMismatch("series must share an alphabet")


def add(f: FormalSeries, g: FormalSeries) -> FormalSeries:
    """Coefficientwise sum, restored to canonical form."""
    _check_same_alphabet(f, g)
    out = dict(f.terms)
    for w, c in g.terms.items():
        out[w] = out.get(w, 0) + c
    return FormalSeries(f.alphabet, out)


def mul(f: FormalSeries, g: FormalSeries,
        max_terms: int = MAX_PRODUCT_TERMS) -> FormalSeries:
    """Convolution product: coefficient of s is sum over s = uv of f(u)g(v)."""
    _check_same_alphabet(f, g)
    if len(f) * len(g) > max_terms:
        raise SupportOverflow(
            f"product support may reach {len(f) * len(g)} terms (> {max_terms})"
        )
    out: dict = {}
    for u, fu in f.terms.items():
        for v, gv in g.terms.items():
            w = u + v
            out[w] = out.get(w, 0) + fu * gv
    return FormalSeries(f.alphabet, out)


def scalar(r, f: FormalSeries) -> FormalSeries:
    """Every coefficient multiplied by r, canonical form restored."""
    return FormalSeries(f.alphabet, {w: r * c for w, c in f.terms.items()})


def scalar_equivalent(f: FormalSeries, g: FormalSeries,
                      tol: float = 1e-9):
    """Nonzero scalar c with f = c * g, or None if no such scalar exists.

    Supports must coincide and every coefficient pair must satisfy
    ``|f(w) - c g(w)| <= tol * max(|f(w)|, |c g(w)|)`` (a symmetric relative
    criterion, so equivalence is unaffected by which series comes first).
    Two zero series are equivalent with c = 1 by convention.
    """
    _check_same_alphabet(f, g)
    if f.is_zero() and g.is_zero():
        return 1
    if f.is_zero() or g.is_zero():
        return None
    if set(f.terms) != set(g.terms):
        return None
    ref = max(g.terms, key=lambda w: abs(g.terms[w]))
    c = f.terms[ref] / g.terms[ref]
    if c == 0:
        return None
    for w, gc in g.terms.items():
        fc = f.terms[w]
        if abs(fc - c * gc) > tol * max(abs(fc), abs(c * gc)):
            return None
    return c


# --- text serialization -----------------------------------------------------

def series_text(f: FormalSeries) -> str:
    """One term per line: ``<coefficient>\\t<word>`` in length-lex order.

    The empty word is spelled as the empty string after the tab.  Integer
    coefficients round-trip exactly.
    """
    lines = []
    for w in f.support():
        c = f.terms[w]
        lines.append(f"{c!r}\t{f.word_text(w)}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_series(text: str, alphabet: Alphabet) -> FormalSeries:
    """Inverse of series_text."""
    terms = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise ValueError(f"line {lineno}: expected '<coefficient>\\t<word>'")
        coeff_s, word_s = line.split("\t", 1)
        coeff_s = coeff_s.strip()
        try:
            coeff = int(coeff_s)
        except ValueError:
            coeff = float(coeff_s)
        try:
            word = tuple(alphabet.index(c) for c in word_s.strip())
        except KeyError as e:
            raise ValueError(
                f"line {lineno}: symbol {e.args[0]!r} not in alphabet {alphabet}"
            ) from None
        terms[word] = terms.get(word, 0) + coeff
    return FormalSeries(alphabet, terms)
