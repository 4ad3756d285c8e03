"""Minimal self-contained SVG line plots.

No plotting dependency: the figures the CLI emits are simple enough (a few
curves, axes, legend) that writing the SVG by hand keeps the output
byte-deterministic and the install light.  Not a general plotting library;
it draws exactly what the CLI needs and nothing else.
"""

from __future__ import annotations

import math

__all__ = ["line_plot_svg"]

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)

_W, _H = 720, 480
_ML, _MR, _MT, _MB = 72, 24, 40, 56


def _nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi]."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _fmt(v: float) -> str:
    if v == int(v) and abs(v) < 1e6:
        return str(int(v))
    return f"{v:.6g}"


def line_plot_svg(title: str, x_label: str, y_label: str, series) -> str:
    """Render labeled (x, y) polylines to an SVG document string.

    `series` is a sequence of (label, xs, ys) triples.  Non-finite points
    are dropped from their polyline.  Returns the SVG as text.
    """
    pts = []
    for _, xs, ys in series:
        pts.extend(
            (x, y) for x, y in zip(xs, ys) if math.isfinite(x) and math.isfinite(y)
        )
    if pts:
        xlo = min(x for x, _ in pts)
        xhi = max(x for x, _ in pts)
        ylo = min(y for _, y in pts)
        yhi = max(y for _, y in pts)
    else:
        xlo, xhi, ylo, yhi = 0.0, 1.0, 0.0, 1.0
    if xhi <= xlo:
        xhi = xlo + 1.0
    if yhi <= ylo:
        yhi = ylo + 1.0
    ypad = 0.05 * (yhi - ylo)
    ylo -= ypad
    yhi += ypad

    pw = _W - _ML - _MR
    ph = _H - _MT - _MB

    def sx(x: float) -> float:
        return _ML + pw * (x - xlo) / (xhi - xlo)

    def sy(y: float) -> float:
        return _MT + ph * (yhi - y) / (yhi - ylo)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{title}</text>',
    ]
    # axes box
    out.append(
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for tx in _nice_ticks(xlo, xhi):
        px = sx(tx)
        out.append(
            f'<line x1="{px:.1f}" y1="{_MT + ph}" x2="{px:.1f}" '
            f'y2="{_MT + ph + 5}" stroke="black"/>'
        )
        out.append(
            f'<text x="{px:.1f}" y="{_MT + ph + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(tx)}</text>'
        )
    for ty in _nice_ticks(ylo, yhi):
        py = sy(ty)
        out.append(
            f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" '
            f'stroke="black"/>'
        )
        out.append(
            f'<text x="{_ML - 9}" y="{py + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(ty)}</text>'
        )
    out.append(
        f'<text x="{_ML + pw / 2:.1f}" y="{_H - 16}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{x_label}</text>'
    )
    out.append(
        f'<text x="20" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 20 {_MT + ph / 2:.1f})">{y_label}</text>'
    )
    for i, (label, xs, ys) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}"
            for x, y in zip(xs, ys)
            if math.isfinite(x) and math.isfinite(y)
        )
        if coords:
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{color}" '
                f'stroke-width="1.5"/>'
            )
        ly = _MT + 16 + 16 * i
        out.append(
            f'<line x1="{_ML + pw - 150}" y1="{ly - 4}" x2="{_ML + pw - 126}" '
            f'y2="{ly - 4}" stroke="{color}" stroke-width="1.5"/>'
        )
        out.append(
            f'<text x="{_ML + pw - 120}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
