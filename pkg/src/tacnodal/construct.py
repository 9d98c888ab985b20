"""Valuations realizing each tropical 1-tacnodal feature inside a unit-triangle fringe.

The feature cells get a tent lift (flat on the first cell, bent along the
shared edge for glued kinds). Feature lattice points that are not vertices
sit one unit below. Points outside the feature drop off with their lattice
distance q to it, plus q^2 and a much smaller generic quadratic; the
result is strictly concave off the feature, so every fringe lattice point
is a vertex and the fringe is triangulated by unit triangles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .classify import KINDS, classify, is_unit_triangle
from .lattice import LatticePolytope, Point
from .tropical import DualSubdivision, TropicalPolynomial, dual_subdivision


def _P(*pts) -> LatticePolytope:
    return LatticePolytope.hull(pts)


# every glued layout shares the edge on the line j = 0 with the second cell below it
FEATURE_CELLS: dict[str, tuple[LatticePolytope, ...]] = {
    "I": (_P((0, 7), (1, 0), (2, 0)),),
    "II": (_P((0, 7), (2, 0), (3, 0)),),
    "III": (_P((0, 0), (2, 0), (1, 3)), _P((0, 0), (2, 0), (0, -1))),
    "IV": (_P((0, 0), (2, 0), (1, 2)), _P((0, 0), (2, 0), (1, -2))),
    "V": (_P((0, 0), (4, 0), (0, 1)), _P((0, 0), (4, 0), (0, -1))),
    "VI": (_P((1, 0), (2, 0), (0, 3), (1, 3)),),
    "VII": (_P((0, 0), (1, 0), (2, 1), (0, 1), (1, 2)),),
    "VIII": (_P((0, 0), (1, 0), (0, 1), (3, 3)),),
    "IX": (_P((0, 0), (1, 0), (0, 1), (4, 2)),),
    "E": (_P((0, 0), (2, 0), (0, 1), (1, 2)), _P((0, 0), (2, 0), (0, -1))),
}


def _edge_forms(cells) -> list[tuple[int, int, int]]:
    """Affine forms a*i + b*j + c, positive inside, one per outer edge of the union."""
    count: dict[tuple[Point, Point], int] = {}
    for c in cells:
        for a, b in c.edges():
            count[(min(a, b), max(a, b))] = count.get((min(a, b), max(a, b)), 0) + 1
    forms = []
    for c in cells:
        for a, b in c.edges():
            if count[(min(a, b), max(a, b))] == 1:
                # cross(a, b, p) > 0 inside a ccw cell
                ai, aj = b[1] - a[1], -(b[0] - a[0])
                forms.append((-ai, -aj, ai * a[0] + aj * a[1]))
    return forms


def _in_union(cells, p: Point) -> bool:
    return any(c.contains(p) for c in cells)


def _lift(cells, p: Point) -> Fraction:
    """Tent: 0 on the first cell, j on the second (which lies in j <= 0)."""
    return Fraction(min(0, p[1])) if len(cells) == 2 else Fraction(0)


@dataclass(frozen=True)
class PositiveExample:
    kind: str
    polynomial: TropicalPolynomial
    feature: tuple[LatticePolytope, ...]
    newton: LatticePolytope


def _candidate(kind: str, margin: int, penalty: int, delta: Fraction,
               eps: Fraction) -> TropicalPolynomial:
    cells = FEATURE_CELLS[kind]
    verts = {v for c in cells for v in c.vertices}
    ci = Fraction(sum(v[0] for v in verts), len(verts))
    cj = Fraction(sum(v[1] for v in verts), len(verts))
    pts = [(x + dx, y + dy) for (x, y) in verts for dx, dy in product(range(-margin, margin + 1), repeat=2)]
    N = LatticePolytope.hull(pts)
    forms = _edge_forms(cells)
    vals = {}
    for p in N.lattice_points():
        g = _lift(cells, p)
        if _in_union(cells, p):
            vals[p] = g if p in verts else g - 1
        else:
            q = sum(max(0, -(a * p[0] + b * p[1] + c)) for a, b, c in forms)
            x, y = p[0] - ci, p[1] - cj
            Q = x * x + Fraction(13, 11) * y * y + Fraction(1, 5) * x * y
            vals[p] = g - penalty * q - delta * q * q - eps * Q
    return TropicalPolynomial.from_mapping(vals)


def realizes(S: DualSubdivision, kind: str) -> bool:
    cells = set(c.vertices for c in FEATURE_CELLS[kind])
    got = set(c.vertices for c in S.cells)
    return cells <= got and all(is_unit_triangle(c) for c in S.cells if c.vertices not in cells)


def positive_example(kind: str) -> PositiveExample:
    """Deterministic valuations whose subdivision is the feature plus unit triangles."""
    if kind not in KINDS:
        raise KeyError(f"unknown kind {kind!r}; known: {', '.join(KINDS)}")
    for margin, penalty, delta, eps in product((1, 2), (1, 4), (Fraction(1, 4), Fraction(1, 16)),
                                               (Fraction(1, 1000), Fraction(1, 100000))):
        F = _candidate(kind, margin, penalty, delta, eps)
        S = dual_subdivision(F)
        if realizes(S, kind) and classify(S).feature is not None:
            return PositiveExample(kind, F, FEATURE_CELLS[kind], F.newton())
    raise RuntimeError(f"no realization found for kind {kind}")
