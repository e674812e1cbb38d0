"""Minimal self-contained SVG line plots."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2")


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi == lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 5, 10) if m * mag >= raw), default=raw)
    start = math.ceil(lo / step) * step
    out = []
    v = start
    while v <= hi + 1e-12 * abs(step):
        out.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return out


def line_plot(series, xlabel: str, ylabel: str, title: str = "", width: int = 640, height: int = 440) -> str:
    """Render ``[(label, xs, ys), ...]`` as an SVG 1.1 document with one polyline per series."""
    series = [(lab, list(xs), list(ys)) for lab, xs, ys in series if len(xs)]
    allx = [x for _, xs, _ in series for x in xs] or [0.0, 1.0]
    ally = [y for _, _, ys in series for y in ys] or [0.0, 1.0]
    x0, x1 = min(allx), max(allx)
    y0, y1 = min(ally), max(ally)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    left, right, top, bottom = 70, 170, 30, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (y1 - y) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#000000"/>',
    ]
    for t in _ticks(x0, x1):
        X = sx(t)
        out.append(f'<line x1="{_fmt(X)}" y1="{top + ph}" x2="{_fmt(X)}" y2="{top + ph + 5}" stroke="#000000"/>')
        out.append(f'<text x="{_fmt(X)}" y="{top + ph + 18}" font-size="11" text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y0, y1):
        Y = sy(t)
        out.append(f'<line x1="{left - 5}" y1="{_fmt(Y)}" x2="{left}" y2="{_fmt(Y)}" stroke="#000000"/>')
        out.append(f'<text x="{left - 8}" y="{_fmt(Y + 4)}" font-size="11" text-anchor="end">{_fmt(t)}</text>')
    out.append(
        f'<text x="{left + pw / 2}" y="{height - 10}" font-size="13" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text x="16" y="{top + ph / 2}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {top + ph / 2})">{escape(ylabel)}</text>'
    )
    if title:
        out.append(f'<text x="{left + pw / 2}" y="18" font-size="13" text-anchor="middle">{escape(title)}</text>')
    for k, (label, xs, ys) in enumerate(series):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"><title>{escape(label)}</title></polyline>')
        ly = top + 14 + 16 * k
        out.append(f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}" font-size="11">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
