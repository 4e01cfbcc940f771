"""Deterministic SVG line charts for consistency reports.

The chart is derived from a report CSV only (never from in-memory state), so
identical CSV bytes yield identical SVG bytes.  x is log-scaled N; the left
axis carries the Pearson metric, the right axis the extrema-preservation
percentage.  Rows flagged degenerate are omitted from the Pearson series and
noted in the caption.
"""

from __future__ import annotations

import math

from .equivalence import ConsistencyReport, read_report_csv
from .errors import EmptyReport

__all__ = ["emit_plot", "render_report_svg"]

_W, _H = 840, 520
_ML, _MR, _MT, _MB = 70, 70, 40, 100
_RHO_COLOR = "#1f77b4"
_EXT_COLOR = "#d62728"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _nice_bounds(values):
    lo = math.floor(min(values) * 10.0) / 10.0
    hi = math.ceil(max(values) * 10.0) / 10.0
    if lo == hi:
        lo, hi = lo - 0.1, hi + 0.1
    return lo, hi


def render_report_svg(report: ConsistencyReport) -> str:
    """Render a report to SVG text; needs at least two rows."""
    if len(report.rows) < 2:
        raise EmptyReport("plot needs a report with at least 2 rows")
    rows = report.rows
    xs = [math.log10(r.length) for r in rows]
    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    plot_w = _W - _ML - _MR
    plot_h = _H - _MT - _MB

    def px(logn):
        return _ML + plot_w * (logn - x_lo) / (x_hi - x_lo)

    rho_rows = [r for r in rows if not r.degenerate]
    r_lo, r_hi = _nice_bounds([r.rho for r in rho_rows]) if rho_rows else (-1.0, 1.0)

    def py_rho(v):
        return _MT + plot_h * (r_hi - v) / (r_hi - r_lo)

    def py_ext(v):
        return _MT + plot_h * (100.0 - v) / 100.0

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">'
    )
    out.append(f'<rect width="{_W}" height="{_H}" fill="white"/>')
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333333" stroke-width="1"/>'
    )

    # x ticks at each data point
    for r, xv in zip(rows, xs):
        x = _fmt(px(xv))
        out.append(
            f'<line x1="{x}" y1="{_MT + plot_h}" x2="{x}" '
            f'y2="{_MT + plot_h + 5}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{x}" y="{_MT + plot_h + 20}" font-size="11" '
            f'text-anchor="middle">{r.length}</text>'
        )
    out.append(
        f'<text x="{_ML + plot_w // 2}" y="{_MT + plot_h + 40}" font-size="13" '
        f'text-anchor="middle">sequence length N (log scale)</text>'
    )

    # left axis (rho) and right axis (extrema %)
    for i in range(5):
        v = r_lo + (r_hi - r_lo) * i / 4.0
        y = _fmt(py_rho(v))
        out.append(
            f'<line x1="{_ML - 5}" y1="{y}" x2="{_ML}" y2="{y}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{y}" font-size="11" text-anchor="end" '
            f'dominant-baseline="middle" fill="{_RHO_COLOR}">{v:.2f}</text>'
        )
    for v in (0, 25, 50, 75, 100):
        y = _fmt(py_ext(v))
        out.append(
            f'<line x1="{_ML + plot_w}" y1="{y}" x2="{_ML + plot_w + 5}" y2="{y}" '
            f'stroke="#333333"/>'
        )
        out.append(
            f'<text x="{_ML + plot_w + 8}" y="{y}" font-size="11" '
            f'text-anchor="start" dominant-baseline="middle" '
            f'fill="{_EXT_COLOR}">{v}</text>'
        )

    if rho_rows:
        pts = " ".join(
            f"{_fmt(px(math.log10(r.length)))},{_fmt(py_rho(r.rho))}"
            for r in rho_rows
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{_RHO_COLOR}" '
            f'stroke-width="2"/>'
        )
    pts = " ".join(
        f"{_fmt(px(xv))},{_fmt(py_ext(r.extrema_pct))}" for r, xv in zip(rows, xs)
    )
    out.append(
        f'<polyline points="{pts}" fill="none" stroke="{_EXT_COLOR}" '
        f'stroke-width="2" stroke-dasharray="6,3"/>'
    )

    # legend
    out.append(
        f'<line x1="{_ML + 10}" y1="{_MT + 14}" x2="{_ML + 40}" y2="{_MT + 14}" '
        f'stroke="{_RHO_COLOR}" stroke-width="2"/>'
    )
    out.append(
        f'<text x="{_ML + 46}" y="{_MT + 18}" font-size="12">Pearson rho</text>'
    )
    out.append(
        f'<line x1="{_ML + 160}" y1="{_MT + 14}" x2="{_ML + 190}" y2="{_MT + 14}" '
        f'stroke="{_EXT_COLOR}" stroke-width="2" stroke-dasharray="6,3"/>'
    )
    out.append(
        f'<text x="{_ML + 196}" y="{_MT + 18}" font-size="12">extrema preserved (%)</text>'
    )

    # caption: configuration summary plus any omitted degenerate rows
    meta = report.meta
    caption = (
        f"{meta.get('mapping1', '?')} vs {meta.get('mapping2', '?')}, "
        f"operator={meta.get('operator', '?')}, "
        f"boundary={meta.get('boundary', '?')}, "
        f"exclude={meta.get('exclude', '?')}"
    )
    out.append(
        f'<text x="{_ML}" y="{_H - 40}" font-size="12">{caption}</text>'
    )
    skipped = [str(r.length) for r in rows if r.degenerate]
    if skipped:
        out.append(
            f'<text x="{_ML}" y="{_H - 22}" font-size="12">rho undefined '
            f'(degenerate profile) at N = {", ".join(skipped)}; points omitted</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plot(report_csv, out_svg) -> str:
    """Read a report CSV, render it and write the SVG file."""
    report = read_report_csv(report_csv)
    svg = render_report_svg(report)
    with open(out_svg, "w", newline="") as fh:
        fh.write(svg)
    return svg
