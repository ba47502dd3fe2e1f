"""Standalone SVG line charts, no external references or dependencies.

Each requested series becomes exactly one ``<polyline>`` (tagged with a
``data-series`` attribute); axes, grid, and ticks use ``<line>``/``<text>``
elements so polylines map one-to-one onto data series.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import DomainError
from .tables import table_rows
from .volume import SweepTable

WIDTH, HEIGHT = 720, 460
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72, 150, 48, 56

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")

DEFAULT_SERIES = ("gamma_quantum", "gamma_separable", "gamma_entangled", "ratio")


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def emit_plot(
    table: SweepTable,
    path,
    series: tuple[str, ...] = DEFAULT_SERIES,
    title: str | None = None,
) -> None:
    """Render a sweep table as a standalone SVG line chart.

    Args:
        table: sweep table with at least two rows
        path: output file
        series: column names to plot, one polyline each
        title: chart title (defaults to the swept parameter)

    Raises:
        DomainError: fewer than two rows, or no finite data to plot.
    """
    rows = table_rows(table)
    if len(rows) < 2:
        raise DomainError("plot needs at least 2 rows")
    xs = [row["param"] for row in rows]
    data = {
        name: [(x, row[name]) for x, row in zip(xs, rows) if math.isfinite(row[name])]
        for name in series
    }
    ys = [y for pts in data.values() for _, y in pts]
    if not ys:
        raise DomainError("no finite values to plot")

    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    pad = 0.05 * (y_hi - y_lo) or max(abs(y_hi), 1e-9) * 0.1
    y_lo, y_hi = y_lo - pad, y_hi + pad

    px_l, px_r = MARGIN_L, WIDTH - MARGIN_R
    px_t, px_b = MARGIN_T, HEIGHT - MARGIN_B

    def to_x(v):
        return px_l + (v - x_lo) / (x_hi - x_lo) * (px_r - px_l)

    def to_y(v):
        return px_b - (v - y_lo) / (y_hi - y_lo) * (px_b - px_t)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="#ffffff"/>',
        f'<text x="{(px_l + px_r) / 2:.1f}" y="28" text-anchor="middle" '
        f'font-size="16" font-family="sans-serif">{_escape(title or table.parameter + " sweep")}</text>',
    ]

    # horizontal grid + y tick labels
    for i in range(6):
        v = y_lo + (y_hi - y_lo) * i / 5
        y = to_y(v)
        out.append(
            f'<line x1="{px_l}" y1="{y:.2f}" x2="{px_r}" y2="{y:.2f}" '
            'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{px_l - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11" font-family="sans-serif">{v:.4g}</text>'
        )
    # axes
    out.append(
        f'<line x1="{px_l}" y1="{px_b}" x2="{px_r}" y2="{px_b}" stroke="#000000" stroke-width="1.5"/>'
    )
    out.append(
        f'<line x1="{px_l}" y1="{px_t}" x2="{px_l}" y2="{px_b}" stroke="#000000" stroke-width="1.5"/>'
    )
    # x ticks at grid values
    for v in xs:
        x = to_x(v)
        out.append(
            f'<line x1="{x:.2f}" y1="{px_b}" x2="{x:.2f}" y2="{px_b + 5}" '
            'stroke="#000000" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{x:.2f}" y="{px_b + 18}" text-anchor="middle" '
            f'font-size="11" font-family="sans-serif">{v:.4g}</text>'
        )
    out.append(
        f'<text x="{(px_l + px_r) / 2:.1f}" y="{HEIGHT - 14}" text-anchor="middle" '
        f'font-size="13" font-family="sans-serif">{_escape(table.parameter)}</text>'
    )

    # series polylines + legend
    for i, name in enumerate(series):
        color = COLORS[i % len(COLORS)]
        pts = " ".join(f"{to_x(x):.2f},{to_y(y):.2f}" for x, y in data[name])
        out.append(
            f'<polyline data-series="{_escape(name)}" fill="none" stroke="{color}" '
            f'stroke-width="2" points="{pts}"/>'
        )
        ly = px_t + 16 + i * 20
        out.append(
            f'<line x1="{px_r + 12}" y1="{ly}" x2="{px_r + 34}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{px_r + 40}" y="{ly + 4}" text-anchor="start" '
            f'font-size="12" font-family="sans-serif">{_escape(name)}</text>'
        )
    out.append("</svg>")
    Path(path).write_text("\n".join(out) + "\n", encoding="utf-8")
