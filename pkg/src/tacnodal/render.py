"""Deterministic SVG drawings of a tropical curve and its dual subdivision.

All geometry is exact until the last step. Each panel multiplies its rational
coordinates by the lcm of their denominators to get integers, and only the
final affine map onto the SVG canvas uses floats (printed with 2 decimals).
"""

from __future__ import annotations

from fractions import Fraction
from math import cos, lcm, pi, sin

from .tropical import DualSubdivision, TropicalCurve

PANEL = 400
MARGIN = 30


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def clip_box(C: TropicalCurve) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Box around the vertices with a margin of a quarter of the span (at least 1)."""
    xs = [p[0] for p in C.vertices]
    ys = [p[1] for p in C.vertices]
    pad = max(Fraction(1), (max(xs) - min(xs)) / 4, (max(ys) - min(ys)) / 4)
    return min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad


def clip_ray(u, d, box) -> tuple[Fraction, Fraction]:
    x0, y0, x1, y1 = box
    ts = []
    if d[0]:
        ts.append(((x1 if d[0] > 0 else x0) - u[0]) / d[0])
    if d[1]:
        ts.append(((y1 if d[1] > 0 else y0) - u[1]) / d[1])
    t = min(ts)
    return (u[0] + t * d[0], u[1] + t * d[1])


class _Canvas:
    """Integer-scaled points mapped onto a square panel at horizontal offset ox."""

    def __init__(self, pts, ox: int):
        L = lcm(*(Fraction(c).denominator for p in pts for c in p)) if pts else 1
        self.L = L
        ints = [(int(p[0] * L), int(p[1] * L)) for p in pts]
        self.x0 = min(i for i, _ in ints)
        self.y1 = max(j for _, j in ints)
        span = max(max(i for i, _ in ints) - self.x0, self.y1 - min(j for _, j in ints), 1)
        self.k = (PANEL - 2 * MARGIN) / span
        self.ox = ox

    def __call__(self, p) -> tuple[str, str]:
        i, j = int(Fraction(p[0]) * self.L), int(Fraction(p[1]) * self.L)
        return (_fmt(self.ox + MARGIN + (i - self.x0) * self.k),
                _fmt(MARGIN + (self.y1 - j) * self.k))


def _star(x: float, y: float, r: float = 6.0) -> str:
    pts = []
    for k in range(10):
        rad = r if k % 2 == 0 else r / 2.5
        a = -pi / 2 + k * pi / 5
        pts.append(f"{_fmt(x + rad * cos(a))},{_fmt(y + rad * sin(a))}")
    return f'<polygon class="interior" points="{" ".join(pts)}" fill="red"/>'


def _triangle(x: float, y: float, r: float = 5.0) -> str:
    pts = [(x, y - r), (x - r, y + r * 0.8), (x + r, y + r * 0.8)]
    s = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in pts)
    return f'<polygon class="boundary" points="{s}" fill="none" stroke="black"/>'


def curve_panel(C: TropicalCurve, ox: int = 0) -> list[str]:
    box = clip_box(C)
    ends = [clip_ray(C.vertices[r.u], r.direction, box) for r in C.rays]
    cv = _Canvas([(box[0], box[1]), (box[2], box[3])], ox)
    out = ['<g class="curve">']
    for e in C.bounded_edges:
        (x1, y1), (x2, y2) = cv(C.vertices[e.u]), cv(C.vertices[e.v])
        out.append(f'<line class="edge" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
        if e.weight > 1:
            mx = (float(x1) + float(x2)) / 2
            my = (float(y1) + float(y2)) / 2
            out.append(f'<text x="{_fmt(mx + 4)}" y="{_fmt(my - 4)}" font-size="12">{e.weight}</text>')
    for r, end in zip(C.rays, ends):
        (x1, y1), (x2, y2) = cv(C.vertices[r.u]), cv(end)
        out.append(f'<line class="ray" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black"/>')
        if r.weight > 1:
            out.append(f'<text x="{x2}" y="{y2}" font-size="12">{r.weight}</text>')
    for p in C.vertices:
        x, y = cv(p)
        out.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="black"/>')
    out.append("</g>")
    return out


def point_marks(S: DualSubdivision) -> dict[tuple[int, int], str]:
    """'vertex', 'interior' (inside a cell) or 'boundary' (on an edge, not a vertex)."""
    verts = set(S.vertices)
    marks = {}
    for p in S.newton.lattice_points():
        if p in verts:
            marks[p] = "vertex"
        elif any(c.contains(p, strict=True) for c in S.cells):
            marks[p] = "interior"
        else:
            marks[p] = "boundary"
    return marks


def subdivision_panel(S: DualSubdivision, ox: int = 0) -> list[str]:
    cv = _Canvas(list(S.newton.vertices), ox)
    out = ['<g class="subdivision">']
    for c in S.cells:
        pts = " ".join(",".join(cv(v)) for v in c.vertices)
        out.append(f'<polygon points="{pts}" fill="none" stroke="black"/>')
    for p, kind in sorted(point_marks(S).items()):
        x, y = cv(p)
        if kind == "vertex":
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
        elif kind == "interior":
            out.append(_star(float(x), float(y)))
        else:
            out.append(_triangle(float(x), float(y)))
    out.append("</g>")
    return out


def render_svg(C: TropicalCurve, S: DualSubdivision) -> str:
    body = curve_panel(C, 0) + subdivision_panel(S, PANEL)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{2 * PANEL}" '
            f'height="{PANEL}" viewBox="0 0 {2 * PANEL} {PANEL}">')
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *body, "</svg>"]) + "\n"
