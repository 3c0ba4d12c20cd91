"""Minimal labelled scatter plot written as plain SVG markup."""

from __future__ import annotations

from typing import Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 480
MARGIN = {"left": 70, "right": 30, "top": 40, "bottom": 60}
TICKS = 5


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if lo == hi:
        pad = abs(lo) * 0.05 or 0.5
    else:
        pad = (hi - lo) * 0.08
    return lo - pad, hi + pad


def _fmt(v: float) -> str:
    return f"{v:.4g}"


def scatter_svg(
    labels: Sequence[str],
    xs: Sequence[float],
    ys: Sequence[float],
    x_title: str,
    y_title: str,
    title: str | None = None,
) -> str:
    """Return an SVG document with one labelled point per entry."""
    if not (len(labels) == len(xs) == len(ys)) or not labels:
        raise ValueError("labels, xs and ys must be non-empty and of equal length")
    x0, x1 = _span(xs)
    y0, y1 = _span(ys)
    pw = WIDTH - MARGIN["left"] - MARGIN["right"]
    ph = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def px(x):
        return MARGIN["left"] + (x - x0) / (x1 - x0) * pw

    def py(y):
        return MARGIN["top"] + (y1 - y) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
        f'<rect x="{MARGIN["left"]}" y="{MARGIN["top"]}" width="{pw}" height="{ph}" '
        'fill="none" stroke="#000000"/>',
    ]
    for k in range(TICKS + 1):
        xv = x0 + (x1 - x0) * k / TICKS
        yv = y0 + (y1 - y0) * k / TICKS
        tx, ty = px(xv), py(yv)
        base = MARGIN["top"] + ph
        out.append(f'<line x1="{tx:.2f}" y1="{base}" x2="{tx:.2f}" y2="{base + 5}" stroke="#000000"/>')
        out.append(f'<text x="{tx:.2f}" y="{base + 18}" text-anchor="middle">{_fmt(xv)}</text>')
        out.append(
            f'<line x1="{MARGIN["left"] - 5}" y1="{ty:.2f}" x2="{MARGIN["left"]}" y2="{ty:.2f}" stroke="#000000"/>'
        )
        out.append(
            f'<text x="{MARGIN["left"] - 8}" y="{ty + 4:.2f}" text-anchor="end">{_fmt(yv)}</text>'
        )
    out.append(
        f'<text x="{MARGIN["left"] + pw / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle" '
        f'font-size="13">{escape(x_title)}</text>'
    )
    cy = MARGIN["top"] + ph / 2
    out.append(
        f'<text x="18" y="{cy:.2f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 18 {cy:.2f})">{escape(y_title)}</text>'
    )
    if title:
        out.append(
            f'<text x="{WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>'
        )
    for label, x, y in zip(labels, xs, ys):
        cx, cy = px(x), py(y)
        out.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="4" fill="#1f77b4"/>')
        out.append(f'<text x="{cx + 6:.2f}" y="{cy - 6:.2f}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
