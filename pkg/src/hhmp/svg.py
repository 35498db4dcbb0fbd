"""Static SVG pictures of subdivisions, projected onto two coordinates."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .polytope import HPolytope, Subdivision

__all__ = ["emit_svg", "emit_polytope_svg", "NonPlanarError"]

_FILLS = ["#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5"]


class NonPlanarError(ValueError):
    pass


def _hull(points: list[tuple[Fraction, Fraction]]) -> list[tuple[Fraction, Fraction]]:
    """Andrew's monotone chain, exact; collinear points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _projection(n: int, projection: Sequence[int] | None) -> tuple[int, int]:
    if projection is None:
        if n != 3:
            raise NonPlanarError(f"polytopes in R^{n} need an explicit projection")
        return 0, 1
    a, b = projection
    if not (1 <= a <= n and 1 <= b <= n) or a == b:
        raise NonPlanarError(f"bad projection {projection} for R^{n}")
    return a - 1, b - 1


def _fmt(x: float) -> str:
    return f"{x:.3f}".rstrip("0").rstrip(".")


def _render(cells: list[tuple[str, HPolytope]], n: int, projection, vertex_labels: bool) -> str:
    a, b = _projection(n, projection)
    polys = [(label, _hull([(v[a], v[b]) for v in P.vertices])) for label, P in cells]
    xs = [p[0] for _, poly in polys for p in poly]
    ys = [p[1] for _, poly in polys for p in poly]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    size, pad = 400, 40
    scale = Fraction(size) / max(hi_x - lo_x, hi_y - lo_y, Fraction(1))

    def place(p):
        # flip y so that larger coordinates sit higher
        return float(pad + (p[0] - lo_x) * scale), float(pad + (hi_y - p[1]) * scale)

    width = _fmt(float((hi_x - lo_x) * scale) + 2 * pad)
    height = _fmt(float((hi_y - lo_y) * scale) + 2 * pad)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f"<desc>projection onto coordinates z{a + 1}, z{b + 1}</desc>",
    ]
    for k, (label, poly) in enumerate(polys):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in map(place, poly))
        fill = _FILLS[k % len(_FILLS)]
        out.append(f'<polygon points="{pts}" fill="{fill}" fill-opacity="0.6" stroke="black" stroke-width="1.5">'
                   f"<title>{escape(label)}</title></polygon>")
        if poly:
            cx = sum(x for x, _ in map(place, poly)) / len(poly)
            cy = sum(y for _, y in map(place, poly)) / len(poly)
            out.append(f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-size="14" text-anchor="middle">{escape(label)}</text>')
    if vertex_labels:
        for _, P in cells:
            for v in sorted(P.vertices):
                x, y = place((v[a], v[b]))
                text = "(" + ",".join(str(c) for c in v) + ")"
                out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3"/>')
                out.append(f'<text x="{_fmt(x + 5)}" y="{_fmt(y - 5)}" font-size="11">{escape(text)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(sub: Subdivision, projection: Sequence[int] | None = None) -> str:
    """One labelled polygon per piece; the default projection (z1, z2) is only allowed for n = 3."""
    return _render(list(sub.pieces), sub.parent.n, projection, vertex_labels=False)


def emit_polytope_svg(P: HPolytope, label: str = "", projection: Sequence[int] | None = None) -> str:
    """A single polytope with its vertices labelled."""
    return _render([(label, P)], P.n, projection, vertex_labels=True)
