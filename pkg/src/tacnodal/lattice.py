"""Lattice polygons up to Aff(Z^2): statistics, normal forms, enumeration, catalog."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Sequence

Point = tuple[int, int]


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lattice_length(a: Point, b: Point) -> int:
    return gcd(b[0] - a[0], b[1] - a[1])


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Strict corners, counterclockwise, starting at the lexicographically least point."""
    pts = sorted(set((int(x), int(y)) for x, y in points))
    if len(pts) < 3:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class DegeneratePolygonError(ValueError):
    pass


@dataclass(frozen=True)
class LatticePolytope:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise DegeneratePolygonError(f"need at least 3 vertices, got {vs}")
        for k in range(n):
            if cross(vs[k - 1], vs[k], vs[(k + 1) % n]) <= 0:
                raise DegeneratePolygonError(
                    f"vertices {vs} are not strictly convex counterclockwise at index {k}")
        if min(vs) != vs[0]:
            raise DegeneratePolygonError(f"vertex list {vs} must start at its least vertex")

    @classmethod
    def hull(cls, points: Iterable[Sequence[int]]) -> "LatticePolytope":
        h = convex_hull((p[0], p[1]) for p in points)
        if len(h) < 3:
            raise DegeneratePolygonError(f"points span no 2-dimensional polygon: {h}")
        return cls(tuple(h))

    @classmethod
    def from_json(cls, obj) -> "LatticePolytope":
        return cls.hull(obj["vertices"] if isinstance(obj, dict) else obj)

    def to_json(self) -> dict:
        return {"vertices": [list(v) for v in self.vertices]}

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[tuple[Point, Point]]:
        vs = self.vertices
        return [(vs[k], vs[(k + 1) % len(vs)]) for k in range(len(vs))]

    @property
    def area2(self) -> int:
        vs = self.vertices
        return sum(cross(vs[0], vs[k], vs[k + 1]) for k in range(1, len(vs) - 1))

    def contains(self, p: Point, strict: bool = False) -> bool:
        for a, b in self.edges():
            c = cross(a, b, p)
            if c < 0 or (strict and c == 0):
                return False
        return True

    def lattice_points(self) -> list[Point]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return [(x, y) for x in range(min(xs), max(xs) + 1) for y in range(min(ys), max(ys) + 1)
                if self.contains((x, y))]

    def interior_points(self) -> list[Point]:
        return [p for p in self.lattice_points() if self.contains(p, strict=True)]

    def boundary_points(self) -> list[Point]:
        return [p for p in self.lattice_points() if not self.contains(p, strict=True)]

    def on_boundary(self, p: Point) -> bool:
        return self.contains(p) and not self.contains(p, strict=True)

    def translate(self, dx: int, dy: int) -> "LatticePolytope":
        return LatticePolytope.hull((x + dx, y + dy) for x, y in self.vertices)


@dataclass(frozen=True)
class PolygonStats:
    area2: int
    boundary_count: int
    interior_count: int
    edge_lengths: tuple[int, ...]  # sorted descending
    is_parallel: bool
    num_edges: int


def is_parallel(P: LatticePolytope) -> bool:
    """Opposite edges of an even polygon are equal and opposite vectors."""
    vs = P.vertices
    m = len(vs)
    if m % 2:
        return False
    h = m // 2
    for k in range(h):
        a, b = vs[k], vs[(k + 1) % m]
        c, d = vs[k + h], vs[(k + h + 1) % m]
        if (b[0] - a[0], b[1] - a[1]) != (c[0] - d[0], c[1] - d[1]):
            return False
    return True


def polygon_stats(P: LatticePolytope) -> PolygonStats:
    lengths = tuple(sorted((lattice_length(a, b) for a, b in P.edges()), reverse=True))
    B = sum(lengths)
    A = P.area2
    interior = (A - B + 2) // 2  # Pick
    return PolygonStats(A, B, interior, lengths, is_parallel(P), len(P))


# ---------------------------------------------------------------- unimodular maps


@dataclass(frozen=True)
class UnimodularMap:
    """p -> (a*i + b*j + tx, c*i + d*j + ty)."""

    a: int
    b: int
    c: int
    d: int
    tx: int = 0
    ty: int = 0

    def __post_init__(self):
        if abs(self.det) != 1:
            raise ValueError(f"linear part has determinant {self.det}, not +-1")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls) -> "UnimodularMap":
        return cls(1, 0, 0, 1)

    def __call__(self, p: Sequence[int]) -> Point:
        i, j = p[0], p[1]
        return (self.a * i + self.b * j + self.tx, self.c * i + self.d * j + self.ty)

    def apply(self, P: LatticePolytope) -> LatticePolytope:
        return LatticePolytope.hull(self(v) for v in P.vertices)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """self after other."""
        a = self.a * other.a + self.b * other.c
        b = self.a * other.b + self.b * other.d
        c = self.c * other.a + self.d * other.c
        d = self.c * other.b + self.d * other.d
        tx, ty = self((other.tx, other.ty))
        return UnimodularMap(a, b, c, d, tx, ty)

    def inverse(self) -> "UnimodularMap":
        dt = self.det
        a, b, c, d = self.d * dt, -self.b * dt, -self.c * dt, self.a * dt
        tx = -(a * self.tx + b * self.ty)
        ty = -(c * self.tx + d * self.ty)
        return UnimodularMap(a, b, c, d, tx, ty)

    def linear(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def to_json(self) -> dict:
        return {"linear": [[self.a, self.b], [self.c, self.d]], "translation": [self.tx, self.ty]}


def primitive_frame(origin: Point, toward: Point, upper: bool = True) -> UnimodularMap:
    """A unimodular map sending ``origin`` to (0,0) and ``toward - origin`` to (len, 0).

    ``upper`` selects the determinant: +1 keeps the left side of the
    directed edge in the upper half-plane, -1 puts the right side there.
    """
    ex, ey = toward[0] - origin[0], toward[1] - origin[1]
    g, s, t = ext_gcd(ex, ey)
    if g == 0:
        raise ValueError("degenerate edge")
    p, q = ex // g, ey // g
    # rows (s, t) and (-q, p): det = s p + t q = 1
    a, b, c, d = s, t, -q, p
    if not upper:
        c, d = -c, -d
    M = UnimodularMap(a, b, c, d)
    ox, oy = M(origin)
    return UnimodularMap(a, b, c, d, -ox, -oy)


def _frames(P: LatticePolytope) -> Iterator[UnimodularMap]:
    """All normalizing frames: vertex, neighbor, orientation, then a shear."""
    vs = P.vertices
    m = len(vs)
    for k in range(m):
        for step, upper in ((1, True), (-1, False)):
            v, w, u = vs[k], vs[(k + step) % m], vs[(k - step) % m]
            F = primitive_frame(v, w, upper)
            p, q = F(u)
            s = p // q  # shear x -> x - s*y puts u at 0 <= p' < q
            yield UnimodularMap(1, -s, 0, 1).compose(F)


def _key(P: LatticePolytope, F: UnimodularMap) -> tuple[Point, ...]:
    return tuple(sorted(F(v) for v in P.vertices))


def normal_form(P: LatticePolytope) -> LatticePolytope:
    """Canonical representative of the Aff(Z^2)-class of ``P``."""
    return LatticePolytope.hull(min(_key(P, F) for F in _frames(P)))


def normal_form_key(P: LatticePolytope) -> tuple[Point, ...]:
    return min(_key(P, F) for F in _frames(P))


def all_equivalences(P: LatticePolytope, Q: LatticePolytope) -> list[UnimodularMap]:
    """Every affine unimodular map with A(P) = Q (one per automorphism of P)."""
    if polygon_stats(P) != polygon_stats(Q):
        return []
    FP = next(_frames(P))
    target = _key(P, FP)
    out = []
    for FQ in _frames(Q):
        if _key(Q, FQ) == target:
            A = FQ.inverse().compose(FP)
            assert set(A(v) for v in P.vertices) == set(Q.vertices)
            if A not in out:
                out.append(A)
    return out


def unimodular_equivalent(P: LatticePolytope, Q: LatticePolytope) -> UnimodularMap | None:
    """A map A with A(P) = Q, or None."""
    maps = all_equivalences(P, Q)
    return maps[0] if maps else None


# ---------------------------------------------------------------- enumeration


class EnumerationRangeError(ValueError):
    pass


def enumeration_box(area2: int, base: int) -> tuple[range, range]:
    """Coordinate box holding every vertex once the base edge is (0,0)-(base,0)
    and the last vertex (p, q) is sheared to 0 <= p < q.

    Heights are at most area2/base. For a vertex (x, y) the triangle with
    (0,0) and (p,q) has doubled area |p y - q x| <= area2, so
    -area2 <= x < area2 + y.
    """
    h = area2 // base
    return range(-area2, 2 * area2 + 1), range(1, h + 1)


def enumerate_class(m: int, interior: int, lengths: Iterable[int],
                    parallel: bool | None = None) -> list[LatticePolytope]:
    """One normal-form representative per class of m-gons with the given data.

    ``parallel`` restricts to (True) or excludes (False) parallel polygons.
    """
    lengths = sorted(lengths, reverse=True)
    if m not in (3, 4, 5, 6) or len(lengths) != m:
        raise EnumerationRangeError(f"need m in 3..6 and m edge lengths, got m={m}, {lengths}")
    if interior < 0 or interior > 3 or sum(lengths) > 8 or min(lengths) < 1:
        raise EnumerationRangeError(f"out of range: I={interior}, lengths={lengths}")
    B = sum(lengths)
    A = 2 * interior + B - 2
    base = lengths[0]
    remaining = Counter(lengths)
    remaining[base] -= 1
    xs, ys = enumeration_box(A, base)
    cands = [(x, y) for y in ys for x in xs]
    found: dict[tuple[Point, ...], LatticePolytope] = {}
    chain: list[Point] = [(0, 0), (base, 0)]

    def close_ok(rem: Counter) -> bool:
        last = chain[-1]
        L = lattice_length(last, (0, 0))
        if rem[L] != 1 or sum(rem.values()) != 1:
            return False
        p, q = last
        return (0 <= p < q and cross(chain[-2], last, (0, 0)) > 0
                and cross(last, (0, 0), (base, 0)) > 0)

    def dfs(rem: Counter, fan: int):
        if len(chain) == m:
            if fan == A and close_ok(rem):
                P = LatticePolytope.hull(chain)
                if len(P) == m and (parallel is None or is_parallel(P) == parallel):
                    st = polygon_stats(P)
                    assert st.interior_count == interior and list(st.edge_lengths) == lengths
                    key = normal_form_key(P)
                    found.setdefault(key, LatticePolytope.hull(key))
            return
        prev, last = chain[-2], chain[-1]
        for c in cands:
            if cross(prev, last, c) <= 0:
                continue
            L = lattice_length(last, c)
            if rem[L] <= 0:
                continue
            tri = cross((0, 0), last, c)
            if tri <= 0 or fan + tri > A:
                continue
            # the closing edge must still turn left at the origin
            if cross(c, (0, 0), (base, 0)) <= 0:
                continue
            rem[L] -= 1
            chain.append(c)
            dfs(rem, fan + tri)
            chain.pop()
            rem[L] += 1

    dfs(remaining, 0)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------- catalog


@dataclass(frozen=True)
class CatalogTag:
    tag: str
    reference: LatticePolytope
    name: str | None = None  # Std(name)

    def __str__(self):
        return f"Std({self.name})" if self.tag == "Std" else self.tag


def _P(*pts) -> LatticePolytope:
    return LatticePolytope.hull(pts)


FEATURE_POLYTOPES: dict[str, LatticePolytope] = {
    "I": _P((0, 7), (1, 0), (2, 0)),
    "II": _P((0, 7), (2, 0), (3, 0)),
    "III": _P((0, 0), (2, 0), (1, 3)),
    "IV": _P((0, 0), (2, 0), (1, 2)),
    "V": _P((0, 0), (4, 0), (0, 1)),
    "VI": _P((1, 0), (2, 0), (0, 3), (1, 3)),
    "VII": _P((0, 0), (1, 0), (2, 1), (0, 1), (1, 2)),
    "VIII": _P((0, 0), (1, 0), (0, 1), (3, 3)),
    "IX": _P((0, 0), (1, 0), (0, 1), (4, 2)),
    "E": _P((0, 0), (2, 0), (0, 1), (1, 2)),
}

HAT_POLYTOPES: dict[str, LatticePolytope] = {
    "HAT1": _P((2, 0), (0, 1), (0, -1)),
    "HAT2": _P((2, 0), (0, 2), (0, -1)),
    "HAT3": _P((3, 0), (0, 1), (0, -1)),
    "HAT_III": _P((0, -1), (2, 0), (0, 3)),
    "HAT_IV": _P((0, -2), (2, 0), (0, 2)),
    "HAT_V": _P((0, -1), (4, 0), (0, 1)),
}

STD_POLYTOPES: dict[str, LatticePolytope] = {
    "unit-triangle": _P((0, 0), (1, 0), (0, 1)),
    "unit-square": _P((0, 0), (1, 0), (0, 1), (1, 1)),
    "D3(2;1,1,1)": _P((0, 0), (3, 2), (2, 3)),
    "D3(1;2,1,1)": _P((0, 0), (2, 0), (1, 2)),
    "D3(1;1,1,1)": _P((0, 0), (1, 2), (2, 1)),
    "D3(0;3,1,1)": _P((0, 0), (3, 0), (0, 1)),
    "D3(0;2,1,1)": _P((0, 0), (2, 0), (0, 1)),
    "D3(2;2,1,1)": _P((0, 0), (2, 0), (1, 3)),
    "D3(0;4,1,1)": _P((0, 0), (0, 1), (4, 0)),
    "D3(0;2,2,2)": _P((0, 0), (2, 0), (0, 2)),
    "D4par(1;1,1)": _P((0, 0), (1, 0), (1, 2), (2, 2)),
    "D4par(0;2,1)": _P((0, 0), (2, 0), (0, 1), (2, 1)),
    "D4(0;2,1,1,1)": _P((0, 0), (2, 0), (0, 1), (1, 1)),
    "NONREG5": _P((1, 0), (0, 1), (2, 1), (1, 3)),
}


def catalog() -> list[CatalogTag]:
    """Every catalog entry in match order: features, hats, then Std forms."""
    out = [CatalogTag(t, P) for t, P in FEATURE_POLYTOPES.items()]
    out += [CatalogTag(t, P) for t, P in HAT_POLYTOPES.items()]
    out += [CatalogTag("Std", P, n) for n, P in STD_POLYTOPES.items()]
    return out


_INDEX: dict[tuple[Point, ...], list[CatalogTag]] | None = None


def _index() -> dict[tuple[Point, ...], list[CatalogTag]]:
    global _INDEX
    if _INDEX is None:
        idx: dict[tuple[Point, ...], list[CatalogTag]] = {}
        for t in catalog():
            idx.setdefault(normal_form_key(t.reference), []).append(t)
        _INDEX = idx
    return _INDEX


def catalog_matches(P: LatticePolytope) -> list[CatalogTag]:
    """All catalog entries equivalent to ``P``, in match order."""
    return list(_index().get(normal_form_key(P), []))


def catalog_match(P: LatticePolytope) -> CatalogTag | None:
    """First catalog entry equivalent to ``P``."""
    ms = catalog_matches(P)
    return ms[0] if ms else None


def catalog_coincidences() -> list[tuple[str, ...]]:
    """Groups of catalog entries that name the same class."""
    return [tuple(str(t) for t in ts) for ts in _index().values() if len(ts) > 1]


def as_fraction_point(p: Sequence) -> tuple[Fraction, Fraction]:
    return Fraction(p[0]), Fraction(p[1])
