"""Plain SVG figures for planar instances."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .errors import PreconditionError

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")


def _num(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def svg(points: Sequence, colors: dict | None = None, edges_of: Sequence = (),
        highlight: Sequence = (), title: str = "", size: int = 480, margin: int = 24) -> str:
    """Points (colored by class), simplex edges and filled highlighted triangles.

    Output depends only on the inputs, so equal inputs give equal bytes.
    """
    if not points:
        raise PreconditionError("underdetermined", "nothing to draw")
    if points[0].dim != 2:
        raise PreconditionError("dimension", "figures are planar; project first")
    xs = [Fraction(p.coords[0]) for p in points]
    ys = [Fraction(p.coords[1]) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or Fraction(1)
    scale = Fraction(size - 2 * margin) / span

    def at(p):
        x = float((Fraction(p.coords[0]) - x0) * scale) + margin
        y = size - (float((Fraction(p.coords[1]) - y0) * scale) + margin)
        return x, y

    pos = {p.id: at(p) for p in points}
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    if title:
        out.append(f'<title>{escape(title)}</title>')
    for s in sorted(tuple(sorted(t)) for t in highlight):
        pts = " ".join(f"{_num(pos[v][0])},{_num(pos[v][1])}" for v in s)
        c = PALETTE[colors[s[0]] % len(PALETTE)] if colors else "#999999"
        out.append(f'<polygon points="{pts}" fill="{c}" fill-opacity="0.25" stroke="{c}" stroke-width="1.5"/>')
    seen = set()
    for s in sorted(tuple(sorted(t)) for t in edges_of):
        for a in range(len(s)):
            for b in range(a + 1, len(s)):
                e = (s[a], s[b])
                if e in seen:
                    continue
                seen.add(e)
                (xa, ya), (xb, yb) = pos[e[0]], pos[e[1]]
                out.append(f'<line x1="{_num(xa)}" y1="{_num(ya)}" x2="{_num(xb)}" y2="{_num(yb)}" '
                           f'stroke="#444444" stroke-width="0.8"/>')
    for p in sorted(points, key=lambda q: q.id):
        x, y = pos[p.id]
        c = PALETTE[colors[p.id] % len(PALETTE)] if colors else "#000000"
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="3.5" fill="{c}"><title>{p.id}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
