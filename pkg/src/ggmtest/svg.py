"""Minimal deterministic SVG line charts.

Purpose-built for the plot command: fixed canvas, one polyline per series,
axis ticks, and a legend.  The output is plain text generated in a fixed
order with fixed number formatting, so identical inputs give identical
bytes — handy for snapshot tests and reproducible reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

WIDTH = 720
HEIGHT = 480
MARGIN_LEFT = 64
MARGIN_RIGHT = 168
MARGIN_TOP = 24
MARGIN_BOTTOM = 56
PLOT_WIDTH = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
PLOT_HEIGHT = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
N_TICKS = 5

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#17becf",
    "#7f7f7f",
)


@dataclass(frozen=True)
class Series:
    """One labelled line: equal-length x and y sequences."""

    label: str
    x: tuple[float, ...]
    y: tuple[float, ...]


def _fmt(value: float) -> str:
    return format(float(value), ".2f")


def _range(values, forced):
    if forced is not None:
        lo, hi = float(forced[0]), float(forced[1])
    else:
        lo = min(values)
        hi = max(values)
    if hi <= lo:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def scale_x(x: float, lo: float, hi: float) -> float:
    """Horizontal data-to-pixel mapping of the plot area."""
    return MARGIN_LEFT + (x - lo) / (hi - lo) * PLOT_WIDTH


def scale_y(y: float, lo: float, hi: float) -> float:
    """Vertical data-to-pixel mapping (SVG y runs downward)."""
    return MARGIN_TOP + (hi - y) / (hi - lo) * PLOT_HEIGHT


def line_chart(series, x_label: str, y_label: str, title: str = "",
               x_range=None, y_range=None) -> str:
    """Render labelled series as a standalone SVG document string."""
    series = list(series)
    if not series:
        raise ValueError("need at least one series to plot")
    for s in series:
        if len(s.x) != len(s.y) or not s.x:
            raise ValueError(f"series {s.label!r} must have equal, nonzero lengths")
    x_lo, x_hi = _range([v for s in series for v in s.x], x_range)
    y_lo, y_hi = _range([v for s in series for v in s.y], y_range)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{PLOT_WIDTH}" '
        f'height="{PLOT_HEIGHT}" fill="none" stroke="#333" stroke-width="1"/>',
    ]
    if title:
        parts.append(
            f'<text x="{MARGIN_LEFT + PLOT_WIDTH / 2:.0f}" y="16" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{escape(title)}</text>'
        )

    for k in range(N_TICKS + 1):
        frac = k / N_TICKS
        xv = x_lo + frac * (x_hi - x_lo)
        yv = y_lo + frac * (y_hi - y_lo)
        px = scale_x(xv, x_lo, x_hi)
        py = scale_y(yv, y_lo, y_hi)
        bottom = MARGIN_TOP + PLOT_HEIGHT
        parts.append(
            f'<line x1="{_fmt(px)}" y1="{bottom}" x2="{_fmt(px)}" y2="{bottom + 5}" '
            'stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(px)}" y="{bottom + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{format(xv, ".3g")}</text>'
        )
        parts.append(
            f'<line x1="{MARGIN_LEFT - 5}" y1="{_fmt(py)}" x2="{MARGIN_LEFT}" y2="{_fmt(py)}" '
            'stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{MARGIN_LEFT - 8}" y="{_fmt(py + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{format(yv, ".3g")}</text>'
        )
    parts.append(
        f'<text x="{MARGIN_LEFT + PLOT_WIDTH / 2:.0f}" y="{HEIGHT - 12}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">{escape(x_label)}</text>'
    )
    parts.append(
        f'<text x="16" y="{MARGIN_TOP + PLOT_HEIGHT / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {MARGIN_TOP + PLOT_HEIGHT / 2:.0f})">{escape(y_label)}</text>'
    )

    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        points = " ".join(
            f"{_fmt(scale_x(xv, x_lo, x_hi))},{_fmt(scale_y(yv, y_lo, y_hi))}"
            for xv, yv in zip(s.x, s.y)
        )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>'
        )

    legend_x = MARGIN_LEFT + PLOT_WIDTH + 16
    for idx, s in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        ly = MARGIN_TOP + 14 + idx * 18
        parts.append(
            f'<line x1="{legend_x}" y1="{ly}" x2="{legend_x + 22}" y2="{ly}" '
            f'stroke="{color}" stroke-width="1.5"/>'
        )
        parts.append(
            f'<text x="{legend_x + 28}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{escape(s.label)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
