"""Deterministic SVG 1.1 drawings: the graph of a map and its inversion set."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .flips import FlipMap, inversion_set
from .iet import inversion_rectangles
from .lattice import vadd
from .piecewise import Piecewise

PANEL = 360
MARGIN = 40
GAP = 60
WIDTH = 2 * PANEL + GAP + 2 * MARGIN
HEIGHT = PANEL + 2 * MARGIN + 30


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def _point(ox: float, x: float, y: float) -> tuple[str, str]:
    return _fmt(ox + PANEL * x), _fmt(MARGIN + PANEL * (1 - y))


def _frame(ox: float, title: str) -> list[str]:
    return [
        f'<rect x="{_fmt(ox)}" y="{MARGIN}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#000" stroke-width="1"/>',
        f'<text x="{_fmt(ox + PANEL / 2)}" y="{MARGIN + PANEL + 24}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{escape(title)}</text>',
    ]


def render_svg(f: Piecewise) -> str:
    L = f.lattice
    num = lambda v: float(L.num(v))  # noqa: E731
    left = MARGIN
    right = MARGIN + PANEL + GAP
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#fff"/>',
    ]
    # Graph: source on the x-axis, arrival on the y-axis.
    out += _frame(left, "graph of f")
    for s, length, d, sg in f.pieces():
        x0, x1 = num(s), num(vadd(s, length))
        y0, y1 = num(d), num(vadd(d, length))
        if sg < 0:
            y0, y1 = y1, y0
        ax, ay = _point(left, x0, y0)
        bx, by = _point(left, x1, y1)
        out.append(f'<line x1="{ax}" y1="{ay}" x2="{bx}" y2="{by}" stroke="#1f4e9c" stroke-width="2"/>')
        gx, _ = _point(left, x0, 0)
        out.append(f'<line x1="{gx}" y1="{_fmt(MARGIN)}" x2="{gx}" y2="{_fmt(MARGIN + PANEL)}" '
                   f'stroke="#bbb" stroke-width="0.5"/>')
    # Inversion set, shaded.
    out += _frame(right, "inversion set")
    E = inversion_set(f) if isinstance(f, FlipMap) else inversion_rectangles(f)
    for (x0, x1), (y0, y1) in E.rectangles():
        ax, ay = _point(right, num(x0), num(y1))
        w, h = PANEL * (num(x1) - num(x0)), PANEL * (num(y1) - num(y0))
        out.append(f'<rect x="{ax}" y="{ay}" width="{_fmt(w)}" height="{_fmt(h)}" '
                   f'fill="#d9534f" fill-opacity="0.45" stroke="#a33" stroke-width="0.5"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
