"""Minimal SVG line charts for the approximation curves.

One polyline per series on linear axes with a handful of ticks and a legend.
Output is plain text so it diffs cleanly.
"""
from __future__ import annotations

import math
from html import escape
from typing import Sequence

WIDTH = 720
HEIGHT = 480
MARGIN = dict(left=80, right=170, top=40, bottom=56)

# actual value, then orders 1-3
SERIES = (
    ("actual", "black"),
    ("order 1", "blue"),
    ("order 2", "red"),
    ("order 3", "green"),
)


def _nice_ticks(lo, hi, count=5):
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=raw)
    first = math.ceil(lo / step) * step
    ticks = []
    t = first
    while t <= hi + 1e-9 * step:
        ticks.append(t)
        t += step
    return ticks


def _fmt(v):
    return ("%.6g" % v).replace("e-0", "e-").replace("e+0", "e")


def line_chart(ns: Sequence[float], columns: Sequence[Sequence[float]], title: str = "",
               ylabel: str = "value", series=SERIES) -> str:
    """Render ``columns`` (one sequence per series) against ``ns`` as SVG text.

    A single grid point is drawn as markers instead of lines.
    """
    ns = [float(n) for n in ns]
    cols = [[float(v) for v in col] for col in columns]
    values = [v for col in cols for v in col if math.isfinite(v)]
    x_lo, x_hi = min(ns), max(ns)
    y_lo, y_hi = (min(values), max(values)) if values else (0.0, 1.0)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 1.0, x_hi + 1.0
    if y_hi == y_lo:
        pad = abs(y_lo) * 0.05 or 1.0
        y_lo, y_hi = y_lo - pad, y_hi + pad
    else:
        pad = 0.05 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - pad, y_hi + pad

    left, top = MARGIN["left"], MARGIN["top"]
    pw = WIDTH - left - MARGIN["right"]
    ph = HEIGHT - top - MARGIN["bottom"]

    def px(n):
        return left + (n - x_lo) / (x_hi - x_lo) * pw

    def py(v):
        return top + (y_hi - v) / (y_hi - y_lo) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" '
        'viewBox="0 0 %d %d" font-family="sans-serif" font-size="12">' % (WIDTH, HEIGHT, WIDTH, HEIGHT),
        '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (WIDTH, HEIGHT),
    ]
    if title:
        out.append('<text x="%.1f" y="22" text-anchor="middle" font-size="14">%s</text>'
                   % (left + pw / 2, escape(title)))
    out.append('<rect x="%d" y="%d" width="%d" height="%d" fill="none" stroke="#444"/>'
               % (left, top, pw, ph))
    for t in _nice_ticks(x_lo, x_hi):
        x = px(t)
        out.append('<line x1="%.1f" y1="%d" x2="%.1f" y2="%d" stroke="#444"/>' % (x, top + ph, x, top + ph + 5))
        out.append('<text x="%.1f" y="%d" text-anchor="middle">%s</text>' % (x, top + ph + 19, _fmt(t)))
    for t in _nice_ticks(y_lo, y_hi):
        y = py(t)
        out.append('<line x1="%d" y1="%.1f" x2="%d" y2="%.1f" stroke="#444"/>' % (left - 5, y, left, y))
        out.append('<line x1="%d" y1="%.1f" x2="%d" y2="%.1f" stroke="#ddd"/>' % (left, y, left + pw, y))
        out.append('<text x="%d" y="%.1f" text-anchor="end">%s</text>' % (left - 8, y + 4, _fmt(t)))
    out.append('<text x="%.1f" y="%d" text-anchor="middle">n</text>' % (left + pw / 2, HEIGHT - 14))
    out.append('<text x="18" y="%.1f" text-anchor="middle" transform="rotate(-90 18 %.1f)">%s</text>'
               % (top + ph / 2, top + ph / 2, escape(ylabel)))

    for (label, color), col in zip(series, cols):
        pts = [(px(n), py(v)) for n, v in zip(ns, col) if math.isfinite(v)]
        if len(pts) == 1:
            out.append('<circle class="series" cx="%.2f" cy="%.2f" r="3.5" fill="%s"><title>%s</title></circle>'
                       % (pts[0][0], pts[0][1], color, escape(label)))
        elif pts:
            out.append('<polyline class="series" fill="none" stroke="%s" stroke-width="1.6" points="%s">'
                       '<title>%s</title></polyline>'
                       % (color, " ".join("%.2f,%.2f" % p for p in pts), escape(label)))

    lx = left + pw + 16
    out.append('<g class="legend">')
    for i, (label, color) in enumerate(series[:len(cols)]):
        y = top + 14 + 22 * i
        out.append('<line x1="%d" y1="%d" x2="%d" y2="%d" stroke="%s" stroke-width="2.5"/>'
                   % (lx, y, lx + 26, y, color))
        out.append('<text x="%d" y="%d">%s</text>' % (lx + 32, y + 4, escape(label)))
    out.append('</g>')
    out.append('</svg>')
    return "\n".join(out) + "\n"
