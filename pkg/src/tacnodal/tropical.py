"""Tropical plane curves, their dual subdivisions, and rank counts.

Conventions: tau(x, y) = max(val_ij + i x + j y). The lift nu is the upper
convex hull of the points (i, j, val_ij), which makes it concave.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .lattice import LatticePolytope, Point, UnimodularMap, cross, is_parallel, lattice_length

Rat = Fraction
RatPoint = tuple[Fraction, Fraction]


class InputError(ValueError):
    """Invalid input; ``field`` names the offending location, e.g. ``support[2].val``."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def parse_rational(text, field: str) -> Fraction:
    if isinstance(text, bool):
        raise InputError(field, f"expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise InputError(field, f"expected a rational string like \"-3/2\", got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise InputError(field, f"zero denominator in {text!r}") from None
    except ValueError:
        raise InputError(field, f"not a rational number: {text!r}") from None


@dataclass(frozen=True)
class TropicalPolynomial:
    """Support points with the valuations of their coefficients."""

    terms: tuple[tuple[Point, Fraction], ...]

    def __post_init__(self):
        terms = tuple(sorted(((int(p[0]), int(p[1])), Fraction(v)) for p, v in self.terms))
        object.__setattr__(self, "terms", terms)
        seen = set()
        for p, _ in terms:
            if p in seen:
                raise InputError("support", f"duplicate support point {p}")
            seen.add(p)
        if len(terms) < 3 or all(cross(terms[0][0], terms[1][0], p) == 0 for p, _ in terms):
            raise InputError("support", "Newton polytope is not 2-dimensional")

    @classmethod
    def from_mapping(cls, vals: Mapping[Point, object]) -> "TropicalPolynomial":
        return cls(tuple((p, Fraction(v)) for p, v in vals.items()))

    @classmethod
    def from_json(cls, obj) -> "TropicalPolynomial":
        if not isinstance(obj, dict) or "support" not in obj:
            raise InputError("support", "missing top-level \"support\" list")
        sup = obj["support"]
        if not isinstance(sup, list):
            raise InputError("support", "must be a list")
        terms = []
        for k, t in enumerate(sup):
            if not isinstance(t, dict):
                raise InputError(f"support[{k}]", "must be an object with i, j, val")
            for key in ("i", "j", "val"):
                if key not in t:
                    raise InputError(f"support[{k}].{key}", "missing")
            for key in ("i", "j"):
                if isinstance(t[key], bool) or not isinstance(t[key], int):
                    raise InputError(f"support[{k}].{key}", f"expected an integer, got {t[key]!r}")
            terms.append(((t["i"], t["j"]), parse_rational(t["val"], f"support[{k}].val")))
        return cls(tuple(terms))

    def to_json(self) -> dict:
        return {"support": [{"i": p[0], "j": p[1], "val": str(v)} for p, v in self.terms]}

    @property
    def support(self) -> list[Point]:
        return [p for p, _ in self.terms]

    def val(self) -> dict[Point, Fraction]:
        return dict(self.terms)

    def newton(self) -> LatticePolytope:
        return LatticePolytope.hull(self.support)

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        return max(v + p[0] * x + p[1] * y for p, v in self.terms)

    def add_affine(self, a, b, c) -> "TropicalPolynomial":
        return TropicalPolynomial(tuple((p, v + a * p[0] + b * p[1] + c) for p, v in self.terms))

    def transform(self, A: UnimodularMap) -> "TropicalPolynomial":
        return TropicalPolynomial(tuple((A(p), v) for p, v in self.terms))


# ---------------------------------------------------------------- dual subdivision


@dataclass(frozen=True)
class Plane:
    """z = alpha*i + beta*j + gamma."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __call__(self, p: Sequence) -> Fraction:
        return self.alpha * p[0] + self.beta * p[1] + self.gamma


@dataclass(frozen=True)
class SubdivisionEdge:
    a: Point
    b: Point
    cells: tuple[int, ...]  # one cell: boundary edge; two: interior edge

    @property
    def length(self) -> int:
        return lattice_length(self.a, self.b)

    @property
    def interior(self) -> bool:
        return len(self.cells) == 2


@dataclass(frozen=True)
class DualSubdivision:
    newton: LatticePolytope
    cells: tuple[LatticePolytope, ...]
    planes: tuple[Plane, ...]
    edges: tuple[SubdivisionEdge, ...]
    nu: Mapping[Point, Fraction]

    @property
    def vertices(self) -> list[Point]:
        return sorted({v for c in self.cells for v in c.vertices})

    def to_json(self) -> dict:
        return {
            "cells": [c.to_json()["vertices"] for c in self.cells],
            "edges": [{"a": list(e.a), "b": list(e.b), "cells": list(e.cells)} for e in self.edges],
            "vertices": [list(v) for v in self.vertices],
            "nu": [{"i": p[0], "j": p[1], "nu": str(v)} for p, v in sorted(self.nu.items())],
        }

    @classmethod
    def from_json(cls, obj) -> "DualSubdivision":
        """Inverse of ``to_json`` up to the lifting planes, which are not stored."""
        if not isinstance(obj, dict) or not isinstance(obj.get("cells"), list):
            raise InputError("cells", "missing list of cells")
        cells = []
        for k, c in enumerate(obj["cells"]):
            try:
                cells.append(LatticePolytope.from_json({"vertices": c}))
            except (TypeError, ValueError) as e:
                raise InputError(f"cells[{k}]", str(e)) from None
        S = cls.from_cells(cells)
        nu = {(t["i"], t["j"]): parse_rational(t["nu"], f"nu[{k}].nu")
              for k, t in enumerate(obj.get("nu", []))}
        return cls(S.newton, S.cells, (), S.edges, nu)

    @classmethod
    def from_cells(cls, cells: Iterable[LatticePolytope],
                   newton: LatticePolytope | None = None) -> "DualSubdivision":
        """Purely combinatorial subdivision (no lift); useful for classification tests."""
        cells = tuple(cells)
        if newton is None:
            newton = LatticePolytope.hull(v for c in cells for v in c.vertices)
        return cls(newton, cells, (), _edges(cells), {})


def _edges(cells: Sequence[LatticePolytope]) -> tuple[SubdivisionEdge, ...]:
    by: dict[tuple[Point, Point], list[int]] = {}
    for k, c in enumerate(cells):
        for a, b in c.edges():
            by.setdefault((min(a, b), max(a, b)), []).append(k)
    return tuple(SubdivisionEdge(a, b, tuple(ks)) for (a, b), ks in sorted(by.items()))


def dual_subdivision(F: TropicalPolynomial) -> DualSubdivision:
    """Regular subdivision of N_F from the upper hull of the lifted support."""
    den = lcm(*(v.denominator for _, v in F.terms))
    pts = [(p[0], p[1], int(v * den)) for p, v in F.terms]
    # highest lifted points first: violating points are found early
    order = sorted(range(len(pts)), key=lambda k: -pts[k][2])
    pts = [pts[k] for k in order]
    planes: dict[tuple[int, int, int, int], None] = {}
    for p1, p2, p3 in combinations(pts, 3):
        ux, uy, uz = p2[0] - p1[0], p2[1] - p1[1], p2[2] - p1[2]
        vx, vy, vz = p3[0] - p1[0], p3[1] - p1[1], p3[2] - p1[2]
        nx, ny, nz = uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx
        if nz == 0:
            continue
        if nz < 0:
            nx, ny, nz = -nx, -ny, -nz
        d = nx * p1[0] + ny * p1[1] + nz * p1[2]
        g = gcd(gcd(nx, ny), gcd(nz, d))
        key = (nx // g, ny // g, nz // g, d // g)
        if key in planes:
            continue
        if all(nx * q[0] + ny * q[1] + nz * q[2] <= d for q in pts):
            planes[key] = None
    cells, cplanes = [], []
    for nx, ny, nz, d in planes:
        on = [(q[0], q[1]) for q in pts if nx * q[0] + ny * q[1] + nz * q[2] == d]
        cells.append(LatticePolytope.hull(on))
        # nz z = d - nx i - ny j, z scaled by den
        s = Fraction(1, nz * den)
        cplanes.append(Plane(-nx * s, -ny * s, d * s))
    order = sorted(range(len(cells)), key=lambda k: cells[k].vertices)
    cells = tuple(cells[k] for k in order)
    cplanes = tuple(cplanes[k] for k in order)
    N = F.newton()
    nu = {p: min(pl(p) for pl in cplanes) for p in N.lattice_points()}
    return DualSubdivision(N, cells, cplanes, _edges(cells), nu)


# ---------------------------------------------------------------- tropical curve


def primitive(v: Sequence[int]) -> tuple[int, int]:
    g = gcd(v[0], v[1])
    return (v[0] // g, v[1] // g)


def outward_normal(cell: LatticePolytope, a: Point, b: Point) -> tuple[int, int]:
    """Primitive outward normal of edge {a, b} of ``cell``."""
    vs = cell.vertices
    m = len(vs)
    for k in range(m):
        p, q = vs[k], vs[(k + 1) % m]
        if {p, q} == {a, b}:
            ex, ey = q[0] - p[0], q[1] - p[1]
            return primitive((ey, -ex))
    raise ValueError(f"{a}-{b} is not an edge of {vs}")


@dataclass(frozen=True)
class CurveEdge:
    u: int
    v: int
    weight: int
    dual: SubdivisionEdge


@dataclass(frozen=True)
class CurveRay:
    u: int
    direction: tuple[int, int]
    weight: int
    dual: SubdivisionEdge


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple[RatPoint, ...]  # vertex k is dual to cell k
    bounded_edges: tuple[CurveEdge, ...]
    rays: tuple[CurveRay, ...]

    def valency(self, k: int) -> int:
        return (sum((e.u == k) + (e.v == k) for e in self.bounded_edges)
                + sum(r.u == k for r in self.rays))

    def outgoing(self, k: int) -> list[tuple[tuple[int, int], int]]:
        """(primitive direction, weight) of every edge leaving vertex k."""
        out = []
        for e in self.bounded_edges:
            for s, t in ((e.u, e.v), (e.v, e.u)):
                if s == k:
                    a, b = self.vertices[s], self.vertices[t]
                    out.append((_rat_primitive((b[0] - a[0], b[1] - a[1])), e.weight))
        out += [(r.direction, r.weight) for r in self.rays if r.u == k]
        return out

    def balancing_residual(self, k: int) -> tuple[int, int]:
        sx = sum(w * d[0] for d, w in self.outgoing(k))
        sy = sum(w * d[1] for d, w in self.outgoing(k))
        return (sx, sy)

    def translate(self, dx, dy) -> "TropicalCurve":
        vs = tuple((x + dx, y + dy) for x, y in self.vertices)
        return TropicalCurve(vs, self.bounded_edges, self.rays)

    def to_json(self) -> dict:
        return {
            "vertices": [[str(x), str(y)] for x, y in self.vertices],
            "bounded_edges": [{"u": e.u, "v": e.v, "weight": e.weight} for e in self.bounded_edges],
            "rays": [{"u": r.u, "direction": list(r.direction), "weight": r.weight} for r in self.rays],
        }


def _rat_primitive(v: tuple[Fraction, Fraction]) -> tuple[int, int]:
    """Primitive integer vector with the direction of a nonzero rational vector."""
    x, y = Fraction(v[0]), Fraction(v[1])
    den = lcm(x.denominator, y.denominator)
    return primitive((int(x * den), int(y * den)))


def curve_from_subdivision(S: DualSubdivision) -> TropicalCurve:
    verts = tuple((-pl.alpha, -pl.beta) for pl in S.planes)
    bounded, rays = [], []
    for e in S.edges:
        if e.interior:
            bounded.append(CurveEdge(e.cells[0], e.cells[1], e.length, e))
        else:
            (k,) = e.cells
            rays.append(CurveRay(k, outward_normal(S.cells[k], e.a, e.b), e.length, e))
    return TropicalCurve(verts, tuple(bounded), tuple(rays))


def tropical_curve(F: TropicalPolynomial) -> TropicalCurve:
    return curve_from_subdivision(dual_subdivision(F))


@dataclass
class DualityReport:
    passed: bool
    checks: dict[str, bool]
    first_violation: str | None = None
    balancing: dict[int, tuple[int, int]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks,
                "first_violation": self.first_violation,
                "balancing": {str(k): list(v) for k, v in self.balancing.items()}}


def verify_duality(C: TropicalCurve, S: DualSubdivision) -> DualityReport:
    """Check the curve/subdivision correspondence item by item."""
    problems: list[tuple[str, str]] = []
    # (1) complement components vs vertices of S: F = Eb + R - V + 1 on the sphere
    faces = len(C.bounded_edges) + len(C.rays) - len(C.vertices) + 1
    if faces != len(S.vertices):
        problems.append(("regions", f"{faces} regions but {len(S.vertices)} vertices of S"))
    # (2) orthogonality, orientation and weights
    for e in C.bounded_edges:
        a, b = C.vertices[e.u], C.vertices[e.v]
        d = (b[0] - a[0], b[1] - a[1])
        if d == (0, 0):
            problems.append(("edges", f"bounded edge {e.u}-{e.v} has length zero"))
            continue
        want = outward_normal(S.cells[e.u], e.dual.a, e.dual.b)
        if _rat_primitive(d) != want:
            problems.append(("edges", f"edge {e.u}-{e.v} direction {_rat_primitive(d)} != {want}"))
        if e.weight != e.dual.length:
            problems.append(("edges", f"edge {e.u}-{e.v} weight {e.weight} != {e.dual.length}"))
    for r in C.rays:
        want = outward_normal(S.cells[r.u], r.dual.a, r.dual.b)
        if r.direction != want:
            problems.append(("edges", f"ray at {r.u} direction {r.direction} != {want}"))
        if r.weight != r.dual.length:
            problems.append(("edges", f"ray at {r.u} weight {r.weight} != {r.dual.length}"))
    # (3) valency
    for k, cell in enumerate(S.cells):
        if C.valency(k) != len(cell):
            problems.append(("valency", f"vertex {k} has valency {C.valency(k)}, cell has {len(cell)} sides"))
    bal = {k: C.balancing_residual(k) for k in range(len(C.vertices))}
    for k, r in bal.items():
        if r != (0, 0):
            problems.append(("balancing", f"vertex {k} residual {r}"))
    names = ("regions", "edges", "valency", "balancing")
    checks = {n: not any(p[0] == n for p in problems) for n in names}
    return DualityReport(not problems, checks, problems[0][1] if problems else None, bal)


# ---------------------------------------------------------------- rank and census


def _barycentric(p: Point, a: Point, b: Point, c: Point) -> tuple[Fraction, Fraction, Fraction]:
    det = cross(a, b, c)
    lb = Fraction(cross(a, p, c), det)
    lc = Fraction(cross(a, b, p), det)
    return 1 - lb - lc, lb, lc


def rank_constraints(S: DualSubdivision) -> tuple[list[Point], list[list[Fraction]]]:
    """Unknowns at V(S) and one coplanarity row per non-frame cell vertex."""
    V = S.vertices
    idx = {v: k for k, v in enumerate(V)}
    rows = []
    for cell in S.cells:
        a, b, c = cell.vertices[:3]
        for w in cell.vertices[3:]:
            la, lb, lc = _barycentric(w, a, b, c)
            row = [Fraction(0)] * len(V)
            row[idx[w]] += 1
            row[idx[a]] -= la
            row[idx[b]] -= lb
            row[idx[c]] -= lc
            rows.append(row)
    return V, rows


def rank(S: DualSubdivision) -> int:
    """Dimension of the space of curves with subdivision S (vertex values, modulo constants)."""
    from sympy import QQ  # noqa: PLC0415
    from sympy.polys.matrices import DomainMatrix  # noqa: PLC0415

    V, rows = rank_constraints(S)
    if not rows:
        return len(V) - 1
    M = DomainMatrix([[QQ(x.numerator, x.denominator) for x in r] for r in rows],
                     (len(rows), len(V)), QQ)
    return len(V) - M.rank() - 1


def expected_rank(S: DualSubdivision) -> int:
    return len(S.vertices) - 1 - sum(len(c) - 3 for c in S.cells)


@dataclass(frozen=True)
class SubdivisionCensus:
    n_ell: dict[int, int]  # cells by number of sides
    npar: dict[int, int]   # parallel cells by number of sides (keys 4, 6, ...)
    script_n: int
    rk: int
    rkexp: int
    d: int
    boundary_defect: int
    is_tp: bool
    lattice_points: int
    num_vertices: int

    def to_json(self) -> dict:
        return {"N": {str(k): v for k, v in sorted(self.n_ell.items())},
                "Npar": {str(k): v for k, v in sorted(self.npar.items())},
                "script_N": self.script_n, "rk": self.rk, "rkexp": self.rkexp, "d": self.d,
                "boundary_defect": self.boundary_defect, "is_TP": self.is_tp,
                "lattice_points": self.lattice_points, "vertices": self.num_vertices}


def subdivision_census(S: DualSubdivision, newton: LatticePolytope | None = None) -> SubdivisionCensus:
    N = newton or S.newton
    n_ell = Counter(len(c) for c in S.cells)
    npar = Counter(len(c) for c in S.cells if is_parallel(c))
    script_n = sum((ell - 3) * n for ell, n in n_ell.items()) - sum(npar.values()) - 1
    rk, rke = rank(S), expected_rank(S)
    bd = N.boundary_points()
    defect = len(bd) - len(set(bd) & set(S.vertices))
    tp = all(len(c) == 3 or (len(c) == 4 and is_parallel(c)) for c in S.cells)
    return SubdivisionCensus(dict(n_ell), dict(npar), script_n, rk, rke, rk - rke, defect, tp,
                             len(N.lattice_points()), len(S.vertices))
