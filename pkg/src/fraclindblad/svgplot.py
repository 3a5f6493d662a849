"""Minimal standalone SVG figures: line plots and heat maps.

Output is a pure function of the input data (no timestamps, ids or external
references), so identical inputs give byte-identical files.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

import numpy as np

WIDTH = 960
HEIGHT = 640
MARGIN_LEFT = 90
MARGIN_RIGHT = 200
MARGIN_TOP = 50
MARGIN_BOTTOM = 70

PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#17becf",
)

# viridis sampled at 0, 1/8, ..., 1
_VIRIDIS = (
    (68, 1, 84),
    (71, 44, 122),
    (59, 81, 139),
    (44, 113, 142),
    (33, 144, 141),
    (39, 173, 129),
    (92, 200, 99),
    (170, 220, 50),
    (253, 231, 37),
)


def colormap(x):
    """Viridis-like colour for ``x`` in [0, 1] as ``#rrggbb``."""
    x = min(max(float(x), 0.0), 1.0) * (len(_VIRIDIS) - 1)
    i = min(int(x), len(_VIRIDIS) - 2)
    f = x - i
    c = [round(a + f * (b - a)) for a, b in zip(_VIRIDIS[i], _VIRIDIS[i + 1])]
    return "#{:02x}{:02x}{:02x}".format(*c)


def nice_ticks(lo, hi, target=6):
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / target
    mag = 10 ** math.floor(math.log10(raw))
    step = next(m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw)
    first = math.ceil(lo / step - 1e-9) * step
    ticks = []
    k = 0
    while first + k * step <= hi + 1e-9 * step:
        ticks.append(round(first + k * step, 12))
        k += 1
    return ticks


def _fmt(v):
    return f"{v:.2f}"


def _tick_label(v):
    return f"{v:g}"


class _Frame:
    def __init__(self, xlim, ylim, right=MARGIN_RIGHT):
        self.x0, self.x1 = xlim
        self.y0, self.y1 = ylim
        self.left = MARGIN_LEFT
        self.top = MARGIN_TOP
        self.w = WIDTH - MARGIN_LEFT - right
        self.h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(self, x):
        return self.left + (x - self.x0) / (self.x1 - self.x0) * self.w

    def py(self, y):
        return self.top + self.h - (y - self.y0) / (self.y1 - self.y0) * self.h

    def axes(self, xlabel, ylabel, title):
        out = []
        b = self.top + self.h
        out.append(
            f'<rect x="{self.left}" y="{self.top}" width="{self.w}" height="{self.h}" '
            'fill="none" stroke="#000000" stroke-width="1"/>'
        )
        for t in nice_ticks(self.x0, self.x1):
            x = _fmt(self.px(t))
            out.append(f'<line x1="{x}" y1="{b}" x2="{x}" y2="{b + 6}" stroke="#000000"/>')
            out.append(
                f'<text x="{x}" y="{b + 22}" text-anchor="middle" font-size="14">'
                f"{_tick_label(t)}</text>"
            )
        for t in nice_ticks(self.y0, self.y1):
            y = _fmt(self.py(t))
            out.append(
                f'<line x1="{self.left - 6}" y1="{y}" x2="{self.left}" y2="{y}" stroke="#000000"/>'
            )
            out.append(
                f'<text x="{self.left - 10}" y="{y}" text-anchor="end" '
                f'dominant-baseline="middle" font-size="14">{_tick_label(t)}</text>'
            )
        cx = self.left + self.w / 2
        cy = self.top + self.h / 2
        out.append(
            f'<text x="{_fmt(cx)}" y="{HEIGHT - 20}" text-anchor="middle" font-size="16">'
            f"{escape(xlabel)}</text>"
        )
        out.append(
            f'<text x="25" y="{_fmt(cy)}" text-anchor="middle" font-size="16" '
            f'transform="rotate(-90 25 {_fmt(cy)})">{escape(ylabel)}</text>'
        )
        out.append(
            f'<text x="{_fmt(cx)}" y="30" text-anchor="middle" font-size="18">'
            f"{escape(title)}</text>"
        )
        return out


def _document(body):
    head = (
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">\n'
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def line_plot(curves, xlabel="t", ylabel="C_l1(t)", title=""):
    """Line plot SVG.

    ``curves`` is a sequence of ``(label, x, y, dashed)`` tuples; colours
    cycle through ``PALETTE`` in order.
    """
    xs = np.concatenate([np.asarray(c[1], float) for c in curves])
    ys = np.concatenate([np.asarray(c[2], float) for c in curves])
    ymax = float(np.max(ys)) if ys.size else 1.0
    frame = _Frame((float(np.min(xs)), float(np.max(xs))), (0.0, ymax * 1.05 if ymax > 0 else 1.0))
    body = frame.axes(xlabel, ylabel, title)
    for k, (label, x, y, dashed) in enumerate(curves):
        colour = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_fmt(frame.px(a))},{_fmt(frame.py(b))}" for a, b in zip(x, y))
        dash = ' stroke-dasharray="8,5"' if dashed else ""
        body.append(
            f'<polyline fill="none" stroke="{colour}" stroke-width="2"{dash} points="{pts}"/>'
        )
        ly = MARGIN_TOP + 20 + 24 * k
        lx = WIDTH - MARGIN_RIGHT + 20
        body.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 30}" y2="{ly}" stroke="{colour}" '
            f'stroke-width="2"{dash}/>'
        )
        body.append(
            f'<text x="{lx + 38}" y="{ly}" dominant-baseline="middle" font-size="14">'
            f"{escape(label)}</text>"
        )
    return _document(body)


def heat_map(x, y, values, xlabel="t", ylabel="alpha", title="", bar_label="C_l1"):
    """Heat map SVG of ``values[i, j]`` at ``(x[j], y[i])``, normalized to ``[0, max]``."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    v = np.asarray(values, float)
    vmax = float(np.max(v)) if v.size and np.max(v) > 0 else 1.0
    frame = _Frame((float(x[0]), float(x[-1])), (float(y[0]), float(y[-1])), right=MARGIN_RIGHT)
    # cell edges at midpoints between samples
    xe = _edges(x)
    ye = _edges(y)
    body = []
    for i in range(len(y)):
        top = frame.py(min(ye[i + 1], y[-1]))
        bot = frame.py(max(ye[i], y[0]))
        for j in range(len(x)):
            lft = frame.px(max(xe[j], x[0]))
            rgt = frame.px(min(xe[j + 1], x[-1]))
            body.append(
                f'<rect x="{_fmt(lft)}" y="{_fmt(top)}" width="{_fmt(rgt - lft)}" '
                f'height="{_fmt(bot - top)}" fill="{colormap(v[i, j] / vmax)}"/>'
            )
    body.extend(frame.axes(xlabel, ylabel, title))
    # colour bar
    bx = WIDTH - MARGIN_RIGHT + 40
    bw = 24
    n = 64
    for k in range(n):
        y0 = MARGIN_TOP + frame.h * (1 - (k + 1) / n)
        body.append(
            f'<rect x="{bx}" y="{_fmt(y0)}" width="{bw}" height="{_fmt(frame.h / n + 0.5)}" '
            f'fill="{colormap((k + 0.5) / n)}"/>'
        )
    body.append(
        f'<rect x="{bx}" y="{MARGIN_TOP}" width="{bw}" height="{frame.h}" fill="none" '
        'stroke="#000000"/>'
    )
    for t in nice_ticks(0.0, vmax, target=5):
        yy = MARGIN_TOP + frame.h * (1 - t / vmax)
        body.append(
            f'<text x="{bx + bw + 8}" y="{_fmt(yy)}" dominant-baseline="middle" '
            f'font-size="13">{_tick_label(t)}</text>'
        )
    body.append(
        f'<text x="{bx + bw / 2}" y="{MARGIN_TOP - 10}" text-anchor="middle" font-size="14">'
        f"{escape(bar_label)}</text>"
    )
    return _document(body)


def _edges(c):
    if len(c) == 1:
        return np.array([c[0] - 0.5, c[0] + 0.5])
    mid = 0.5 * (c[1:] + c[:-1])
    return np.concatenate([[c[0] - (mid[0] - c[0])], mid, [c[-1] + (c[-1] - mid[-1])]])
