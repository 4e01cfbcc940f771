"""Strong and weak equivalence measures between operator profiles and mappings.

Strong equivalence of two mapping pipelines shows up as Pearson correlation 1
between their operator profiles; weak equivalence as preservation of the
location and kind of local extrema.  At the mapping level, scaled rotations
are exactly the transformations that preserve all inner products up to a
common factor, so relatedness is decided on Gram matrices: two tables are
scaled-rotation related iff their symbol Gram matrices are proportional.
When they are, the rotation itself is recovered as the orthogonal polar
factor of F2 F1^+ after removing the scale.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlphabetMismatch,
    DegenerateProfile,
    GridMismatch,
    TooShort,
    ZeroMapping,
)
from .mapping import MappingTable, embed
from .operators import Profile

__all__ = [
    "TIE_RTOL",
    "RotationVerdict",
    "ReportRow",
    "ConsistencyReport",
    "pearson_consistency",
    "extrema_preservation",
    "sign_agreement",
    "rotation_relatedness",
    "random_orthogonal",
    "write_report_csv",
    "report_csv_text",
    "read_report_csv",
]


def _aligned_values(p: Profile, q: Profile):
    if not p.same_grid(q):
        raise GridMismatch("profiles are on different index grids")
    return p.values, q.values


def pearson_consistency(p: Profile, q: Profile, exclude=()) -> float:
    """Pearson correlation of two profiles over their shared index grid.

    ``exclude`` is a collection of index *values* (e.g. {0} to drop the DC
    bin or the zero lag) removed from both profiles before correlating.
    Raises DegenerateProfile when fewer than two indices remain or when a
    retained value list has zero variance (the correlation is undefined).
    """
    a, b = _aligned_values(p, q)
    if exclude:
        keep = ~np.isin(p.params, np.asarray(sorted(exclude), dtype=np.int64))
        a, b = a[keep], b[keep]
    if a.size < 2:
        raise DegenerateProfile("fewer than 2 indices retained")
    a = a - a.mean()
    b = b - b.mean()
    na = float(a @ a)
    nb = float(b @ b)
    if na == 0.0 or nb == 0.0:
        raise DegenerateProfile("constant profile: correlation undefined")
    rho = float(a @ b) / np.sqrt(na * nb)
    return float(min(1.0, max(-1.0, rho)))


# Profile values that are mathematically equal (tied pair counts, mirror
# lags) come out of the kernels differing by summation-order roundoff, a few
# ulp.  Treating gaps below tie_rtol * amplitude as ties keeps the extremum
# and difference-sign comparisons stable against that noise; the threshold
# scales with the profile amplitude, so decisions are invariant under the
# positive affine changes that strong equivalence allows.  Genuine gaps in
# count-based profiles are >= O(1/N) and sit far above it.
TIE_RTOL = 1e-9


def _tie_tol(v: np.ndarray, rtol: float) -> float:
    return rtol * float(v.max() - v.min())


def _extrema_kinds(v: np.ndarray, i: int, tol: float) -> tuple[bool, bool]:
    is_max = v[i] >= v[i - 1] - tol and v[i] >= v[i + 1] - tol
    is_min = v[i] <= v[i - 1] + tol and v[i] <= v[i + 1] + tol
    return is_max, is_min


def _preserved_fraction(a, b, tol_a, tol_b):
    events = 0
    kept = 0
    for i in range(1, a.size - 1):
        amax, amin = _extrema_kinds(a, i, tol_a)
        if not (amax or amin):
            continue
        bmax, bmin = _extrema_kinds(b, i, tol_b)
        if amax:
            events += 1
            kept += bmax
        if amin:
            events += 1
            kept += bmin
    return events, kept


def extrema_preservation(p: Profile, q: Profile, symmetric: bool = False,
                         tie_rtol: float = TIE_RTOL) -> float:
    """Percentage of P's interior local extrema that keep their kind in Q.

    Comparisons are non-strict, so plateau points count as extrema (a flat
    interior point is both a max and a min and contributes two events).
    With no interior extrema in the reference the preservation is vacuous
    and reported as 100.  ``symmetric=True`` averages both directions;
    ``tie_rtol=0`` recovers exact comparisons.
    """
    a, b = _aligned_values(p, q)
    if a.size < 3:
        raise TooShort("extrema comparison needs at least 3 indices")
    tol_a = _tie_tol(a, tie_rtol)
    tol_b = _tie_tol(b, tie_rtol)
    events, kept = _preserved_fraction(a, b, tol_a, tol_b)
    forward = 100.0 if events == 0 else 100.0 * kept / events
    if not symmetric:
        return forward
    events_b, kept_b = _preserved_fraction(b, a, tol_b, tol_a)
    backward = 100.0 if events_b == 0 else 100.0 * kept_b / events_b
    return 0.5 * (forward + backward)


def sign_agreement(p: Profile, q: Profile, tie_rtol: float = TIE_RTOL) -> float:
    """Fraction of consecutive index pairs whose successive differences
    have product >= 0 in the two profiles (tie-level differences count
    as zero)."""
    a, b = _aligned_values(p, q)
    if a.size < 2:
        raise TooShort("sign agreement needs at least 2 indices")
    da = np.diff(a)
    db = np.diff(b)
    da = np.where(np.abs(da) <= _tie_tol(a, tie_rtol), 0.0, da)
    db = np.where(np.abs(db) <= _tie_tol(b, tie_rtol), 0.0, db)
    return float(np.count_nonzero(da * db >= 0.0)) / da.size


@dataclass(frozen=True)
class RotationVerdict:
    """Outcome of the scaled-rotation relatedness test for a mapping pair.

    ``residual`` is the relative Gram-proportionality mismatch that the
    verdict is decided on; ``alignment_residual`` is the relative error
    ||lam R F1 - F2||_F / ||F2||_F of the recovered rotation (related
    verdicts only).
    """

    related: bool
    scale: float | None
    rotation: np.ndarray | None
    residual: float
    alignment_residual: float | None = None


def rotation_relatedness(m1: MappingTable, m2: MappingTable,
                         tol: float = 1e-9) -> RotationVerdict:
    """Decide whether m2 = lam * R(m1) for a scalar lam and orthogonal R.

    Tables of different dimensions are first zero-embedded to the larger
    dimension.  The scale estimate is lam^2 = tr(G2)/tr(G1) and the verdict
    is ``||G2 - lam^2 G1||_F <= tol * ||G2||_F`` on the symbol Gram
    matrices.  The default tolerance suits exact-arithmetic tables; tables
    published at low decimal precision need a wider one.
    """
    if m1.alphabet != m2.alphabet:
        raise AlphabetMismatch("mappings must share an alphabet")
    dim = max(m1.dim, m2.dim)
    f1 = embed(m1, dim).vectors.T
    f2 = embed(m2, dim).vectors.T
    g1 = f1.T @ f1
    g2 = f2.T @ f2
    t1 = float(np.trace(g1))
    t2 = float(np.trace(g2))
    if t1 == 0.0 or t2 == 0.0:
        raise ZeroMapping("all-zero mapping: scale undefined")
    lam2 = t2 / t1
    residual = float(
        np.linalg.norm(g2 - lam2 * g1) / np.linalg.norm(g2)
    )
    if residual > tol:
        return RotationVerdict(False, None, None, residual)
    lam = float(np.sqrt(lam2))
    u, _, vt = np.linalg.svd(f2 @ np.linalg.pinv(f1) / lam)
    rot = u @ vt
    align = float(np.linalg.norm(lam * rot @ f1 - f2) / np.linalg.norm(f2))
    return RotationVerdict(True, lam, rot, residual, align)


def random_orthogonal(dim: int, seed: int) -> np.ndarray:
    """Deterministic random orthogonal matrix for a given (dim, seed).

    Orthogonal factor of a seeded Gaussian matrix with sign-normalized
    columns (the QR R-factor diagonal is made nonnegative, which fixes the
    otherwise arbitrary column signs).
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


# --- consistency reports ----------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    """Consistency metrics between two mapping pipelines at one length."""

    length: int
    rho: float
    extrema_pct: float
    sign_agreement: float
    degenerate: bool = False  # rho undefined (recorded as nan in CSV)


@dataclass(frozen=True)
class ConsistencyReport:
    rows: tuple[ReportRow, ...]
    meta: dict

    def __len__(self) -> int:
        return len(self.rows)


_META_ORDER = ("mapping1", "mapping2", "operator", "boundary", "exclude",
               "seed", "generator", "input", "max_lag", "extrema")


def report_csv_text(report: ConsistencyReport) -> str:
    buf = io.StringIO()
    meta = dict(report.meta)
    for key in _META_ORDER:
        if key in meta:
            buf.write(f"# {key}={meta.pop(key)}\n")
    for key in sorted(meta):
        buf.write(f"# {key}={meta[key]}\n")
    buf.write("N,rho,extrema_pct,sign_agreement\n")
    for row in report.rows:
        rho = "nan" if row.degenerate else repr(float(row.rho))
        buf.write(
            f"{row.length},{rho},{float(row.extrema_pct)!r},"
            f"{float(row.sign_agreement)!r}\n"
        )
    return buf.getvalue()


def write_report_csv(report: ConsistencyReport, path):
    with open(path, "w", newline="") as fh:
        fh.write(report_csv_text(report))


def read_report_csv(path) -> ConsistencyReport:
    meta = {}
    rows = []
    with open(path, "r", newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                item = line.lstrip("# ")
                if "=" in item:
                    k, v = item.split("=", 1)
                    meta[k.strip()] = v.strip()
                continue
            if line == "N,rho,extrema_pct,sign_agreement":
                continue
            n, rho, ext, sig = line.split(",")
            rho_f = float(rho)
            degenerate = np.isnan(rho_f)
            rows.append(
                ReportRow(int(n), 0.0 if degenerate else rho_f,
                          float(ext), float(sig), degenerate)
            )
    return ConsistencyReport(tuple(rows), meta)
