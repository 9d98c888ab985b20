"""Refinement along a long edge: exceptional triangles, deformation patterns
and the catalog of edges that cannot carry a tacnode.

Polynomials on an exceptional triangle Conv{(m,0),(0,m1),(0,-m2)} are written
after multiplying by y^m2, so their support lies in Conv{(0,0),(m,m2),(0,m1+m2)}
and they are ordinary polynomials in x and y.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ExactPoly, Verdict, parse_poly, tacnode_check
from .algebra.cases import Check, criterion_system, verify_case
from .lattice import (FEATURE_POLYTOPES, STD_POLYTOPES, LatticePolytope, Point,
                      UnimodularMap, ext_gcd, lattice_length)

P = parse_poly


def exceptional_polytope(m: int, m1: int, m2: int) -> LatticePolytope:
    if m < 2:
        raise ValueError(f"refinement needs an edge of length m >= 2, got m={m}")
    if m1 < 1 or m2 < 1:
        raise ValueError(f"axis intercepts must be positive, got m1={m1}, m2={m2}")
    return LatticePolytope.hull([(m, 0), (0, m1), (0, -m2)])


def shared_edge(P1: LatticePolytope, P2: LatticePolytope) -> tuple[Point, Point] | None:
    e1 = {frozenset(e) for e in P1.edges()}
    for a, b in P2.edges():
        if frozenset((a, b)) in e1:
            return (min(a, b), max(a, b))
    return None


@dataclass(frozen=True)
class EdgeData:
    cells: tuple[LatticePolytope, LatticePolytope]
    sigma: tuple[Point, Point]
    m: int
    m1: int
    m2: int

    @classmethod
    def from_cells(cls, P1: LatticePolytope, P2: LatticePolytope, m1: int, m2: int) -> "EdgeData":
        sigma = shared_edge(P1, P2)
        if sigma is None:
            raise ValueError("cells share no edge")
        return cls((P1, P2), sigma, lattice_length(*sigma), m1, m2)

    def exceptional(self) -> LatticePolytope:
        return exceptional_polytope(self.m, self.m1, self.m2)


# ---------------------------------------------------------------- M_sigma


def edge_normalizer(sigma: tuple[Point, Point], newton: LatticePolytope,
                    flip: bool = False) -> UnimodularMap:
    """Map sending sigma onto the x-axis and the polytope into x >= 0 (x <= 0 with flip)."""
    (p0, p1) = sigma
    g = lattice_length(p0, p1)
    if g == 0:
        raise ValueError("sigma is a point")
    dx, dy = (p1[0] - p0[0]) // g, (p1[1] - p0[1]) // g
    _, s, t = ext_gcd(dx, dy)
    sign = -1 if flip else 1
    M = UnimodularMap(sign * s, sign * t, -dy, dx)
    imgs = [M(v) for v in newton.vertices]
    tx = -(min(i for i, _ in imgs) if not flip else max(i for i, _ in imgs))
    ty = -M(p0)[1]
    return UnimodularMap(M.a, M.b, M.c, M.d, tx, ty)


def normalizer_conditions(M: UnimodularMap, sigma, newton: LatticePolytope,
                          flip: bool = False) -> dict[str, bool]:
    a, b = M(sigma[0]), M(sigma[1])
    xs = [M(v)[0] for v in newton.vertices]
    return {"sigma horizontal": a[1] == b[1],
            "half-plane": all(x <= 0 for x in xs) if flip else all(x >= 0 for x in xs)}


# ---------------------------------------------------------------- deformation patterns


@dataclass(frozen=True)
class DeformationPatternSpec:
    m: int
    m1: int
    m2: int
    # truncations on the edges (m,m2)-(0,m1+m2) and (0,0)-(m,m2); None skips the check
    phi1: ExactPoly | None = None
    phi2: ExactPoly | None = None
    swap: bool = False  # pattern written with x and y exchanged

    @property
    def delta_z(self) -> LatticePolytope:
        return exceptional_polytope(self.m, self.m1, self.m2)

    @property
    def shifted(self) -> LatticePolytope:
        return self.delta_z.translate(0, self.m2)


@dataclass
class PatternVerdict:
    passed: bool
    failing: str | None
    checks: list[Check]
    note: str = ("condition (a) is read as the pure x^(m-1) slot of the unshifted "
                 "pattern; mixed terms such as x*y^k are not constrained")

    def to_json(self) -> dict:
        return {"passed": self.passed, "failing": self.failing,
                "checks": [c.to_json() for c in self.checks], "note": self.note}


def _xy_terms(phi: ExactPoly) -> dict[Point, ExactPoly]:
    return {e: c for e, c in phi.exponents_in(("x", "y")).items() if not c.is_zero()}


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
    return cr == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) \
        and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def truncation(phi: ExactPoly, a: Point, b: Point) -> ExactPoly:
    out = ExactPoly.const(0, phi.vars)
    for e, c in _xy_terms(phi).items():
        if _on_segment(e, a, b):
            out = out + c * ExactPoly.var("x") ** e[0] * ExactPoly.var("y") ** e[1]
    return out


def deformation_pattern_check(phi: ExactPoly, spec: DeformationPatternSpec) -> PatternVerdict:
    if spec.swap:
        phi = phi.subs({"x": ExactPoly.var("_t")}).subs({"y": ExactPoly.var("x")}).subs(
            {"_t": ExactPoly.var("y")})
    terms = _xy_terms(phi)
    target = spec.shifted
    got = LatticePolytope.hull(terms) if len(terms) >= 3 else None
    if got is None or got.vertices != target.vertices:
        raise ValueError(f"Newton polytope {got.vertices if got else sorted(terms)} "
                         f"is not {target.vertices}")
    slot = (spec.m - 1, spec.m2)
    coef = terms.get(slot)
    checks = [Check("(a) x^(m-1) coefficient vanishes", coef is None,
                    f"coefficient at {slot}: {coef if coef is not None else 0}")]
    top, apex = (0, spec.m1 + spec.m2), (spec.m, spec.m2)
    for name, want, a, b in (("(b) truncation on upper edge", spec.phi1, apex, top),
                             ("(b) truncation on lower edge", spec.phi2, (0, 0), apex)):
        if want is None:
            continue
        have = truncation(phi, a, b)
        checks.append(Check(name, (have - want).is_zero(), f"{have} vs {want}"))
    failing = next((c.name for c in checks if not c.passed), None)
    return PatternVerdict(failing is None, failing, checks)


# ---------------------------------------------------------------- edge catalog


@dataclass
class EdgeVerdict:
    pair_id: str
    verdict: str  # "NotTacnodalEdge" or "IsTacnodalEdge"
    expected: str
    checks: list[Check]
    witness: dict[str, str] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == self.expected and all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"pair": self.pair_id, "verdict": self.verdict, "expected": self.expected,
                "passed": self.passed, "witness": self.witness,
                "checks": [c.to_json() for c in self.checks], "notes": self.notes}


@dataclass(frozen=True)
class CatalogEntry:
    pair_id: str
    cells: tuple[tuple[str, str], ...]  # names of the two cells per listed edge
    length: int
    expected: str
    replicated: bool = False


def _poly(*names: str) -> LatticePolytope:
    return STD_POLYTOPES.get(names[0]) or FEATURE_POLYTOPES[names[0]]


EDGE_CATALOG: dict[str, CatalogEntry] = {e.pair_id: e for e in (
    CatalogEntry("1", (("D3(0;2,1,1)", "D3(0;2,1,1)"),), 2, "NotTacnodalEdge", True),
    CatalogEntry("2", (("D3(1;2,1,1)", "D3(0;2,1,1)"), ("D3(1;2,1,1)", "D4(0;2,1,1,1)")), 2,
                 "NotTacnodalEdge"),
    CatalogEntry("3", (("D3(0;3,1,1)", "D3(0;3,1,1)"),), 3, "NotTacnodalEdge", True),
    CatalogEntry("4", (("D4(0;2,1,1,1)", "D3(0;2,1,1)"),), 2, "NotTacnodalEdge", True),
    CatalogEntry("5", (("D4(0;2,1,1,1)", "D4(0;2,1,1,1)"),), 2, "NotTacnodalEdge", True),
    CatalogEntry("6", (("D4par(0;2,1)", "D3(0;2,1,1)"), ("D4par(0;2,1)", "D4(0;2,1,1,1)")), 2,
                 "NotTacnodalEdge"),
    CatalogEntry("7", (("D3(0;2,2,2)", "D3(0;2,1,1)"),), 2, "NotTacnodalEdge"),
    CatalogEntry("LEN1", (), 1, "NotTacnodalEdge"),
    CatalogEntry("E_EDGE", (("E", "D3(0;2,1,1)"),), 2, "NotTacnodalEdge"),
    CatalogEntry("III", (("III", "D3(0;2,1,1)"),), 2, "IsTacnodalEdge"),
    CatalogEntry("IV", (("IV", "D3(1;2,1,1)"),), 2, "IsTacnodalEdge"),
    CatalogEntry("V", (("V", "D3(0;4,1,1)"),), 4, "IsTacnodalEdge"),
)}

REPLICATION_NOTE = ("independent replication: the obstruction is recomputed with the "
                    "same quotient-ring argument as the other long-edge entries")


def _has_edge_of_length(name: str, length: int) -> bool:
    return any(lattice_length(a, b) == length for a, b in _poly(name).edges())


def _eq(name: str, got: ExactPoly, want: ExactPoly | str) -> Check:
    want = P(want) if isinstance(want, str) else want
    return Check(name, (got - want).is_zero(), f"{got}")


def _nonzero_monomial(name: str, got: ExactPoly, want: str) -> Check:
    """`got` equals `want`, a nonzero multiple of a power of y (y != 0 on the torus)."""
    w = P(want)
    ok = (got - w).is_zero() and len(w.terms) == 1 and set(w.used_vars()) <= {"y"}
    return Check(name, ok, f"{got} (nonzero for y != 0)")


def _y_nonzero(phi: ExactPoly) -> Check:
    v = phi.subs({"y": 0})
    return Check("phi(x, 0) = 1, so y != 0 at a zero of phi", (v - 1).is_zero(), f"{v}")


def _hat1_obstruction(eps: int) -> list[Check]:
    """Pattern on Conv{(2,0),(0,1),(0,-1)}: x = 0 forces Hess = 4*eps*y != 0."""
    phi = P(f"1 + A*y + ({eps})*x^2*y + y^2")
    s = criterion_system(phi)
    spec = DeformationPatternSpec(2, 1, 1, P(f"({eps})*x^2*y + y^2"), P(f"1 + ({eps})*x^2*y"))
    return [
        Check(f"eps={eps}: deformation pattern", deformation_pattern_check(phi, spec).passed, str(phi)),
        _y_nonzero(phi),
        _eq(f"eps={eps}: phi_x = 2*eps*x*y, so x = 0", s["fx"], f"{2 * eps}*x*y"),
        _nonzero_monomial(f"eps={eps}: Hess at x = 0", s["hess"].subs({"x": 0}), f"{4 * eps}*y"),
    ]


def _hat2_obstruction(eps: int) -> list[Check]:
    """Pattern on Conv{(2,0),(0,2),(0,-1)}: x = 0, then K = 48*eps*y^3 != 0."""
    phi = P(f"1 + A*y + ({eps})*x^2*y + B*y^2 + y^3")
    s = criterion_system(phi)
    spec = DeformationPatternSpec(2, 2, 1, P(f"({eps})*x^2*y + y^3"), P(f"1 + ({eps})*x^2*y"))
    return [
        Check(f"eps={eps}: deformation pattern", deformation_pattern_check(phi, spec).passed, str(phi)),
        _y_nonzero(phi),
        _eq(f"eps={eps}: phi_x = 2*eps*x*y, so x = 0", s["fx"], f"{2 * eps}*x*y"),
        _nonzero_monomial(f"eps={eps}: phi_xx at x = 0", s["fx"].diff("x").subs({"x": 0}), f"{2 * eps}*y"),
        _eq(f"eps={eps}: Hess at x = 0 gives B = -3y", s["hess"].subs({"x": 0}), f"{4 * eps}*y*B + {12 * eps}*y^2"),
        _nonzero_monomial(f"eps={eps}: K at x = 0", s["K"].subs({"x": 0}), f"{48 * eps}*y^3"),
    ]


def _hat3_obstruction(eps: int) -> list[Check]:
    """Pattern on Conv{(3,0),(0,1),(0,-1)}: Hess forces x = 0, where the point is a cusp."""
    phi = P(f"1 + A*y + B*x*y + ({eps})*x^3*y + y^2")
    s = criterion_system(phi)
    spec = DeformationPatternSpec(3, 1, 1, P(f"({eps})*x^3*y + y^2"), P(f"1 + ({eps})*x^3*y"))
    hess_on_fx = s["hess"].subs({"B": P(f"{-3 * eps}*x^2")})
    # at x = 0, B = 0 the point (0, y0) with y0^2 + A*y0 + 1 = 0 and 2*y0 + A = 0
    swapped = P(f"1 + A*x + ({eps})*y^3*x + x^2")
    return [
        Check(f"eps={eps}: deformation pattern", deformation_pattern_check(phi, spec).passed, str(phi)),
        _y_nonzero(phi),
        _eq(f"eps={eps}: phi_x = y*(B + 3*eps*x^2)", s["fx"], f"B*y + {3 * eps}*x^2*y"),
        _eq(f"eps={eps}: Hess with B = -3*eps*x^2", hess_on_fx, f"{12 * eps}*x*y"),
        Check(f"eps={eps}: at x = 0, B = 0, A = -2 the point (0, 1) is a cusp",
              tacnode_check(swapped.subs({"A": -2}), (1, 0)) == Verdict.CUSP,
              str(tacnode_check(swapped.subs({"A": -2}), (1, 0)))),
        Check(f"eps={eps}: at x = 0, B = 0, A = 2 the point (0, -1) is a cusp",
              tacnode_check(swapped.subs({"A": 2}), (-1, 0)) == Verdict.CUSP,
              str(tacnode_check(swapped.subs({"A": 2}), (-1, 0)))),
    ]


def _check_2() -> EdgeVerdict:
    checks: list[Check] = []
    for eps in (1, -1):
        f = P(f"(x + ({eps}))^2 + A*x*y + x*y^2")
        fy = f.diff("y").subs({"x": -eps, "y": 0})
        checks.append(_eq(f"eps={eps}: f_y at (-eps, 0) forces A = 0", fy, f"{-eps}*A"))
        checks += _hat2_obstruction(eps)
    return EdgeVerdict("2", "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"residual": "K = 48*y^3 (eps = 1)"},
                       ["the second edge of the entry has the same face data on the long edge"])


def _check_6() -> EdgeVerdict:
    checks = []
    for eps in (1, -1):
        checks += _hat1_obstruction(eps)
    return EdgeVerdict("6", "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"residual": "Hess = 4*y at x = 0 (eps = 1)"})


def _check_7() -> EdgeVerdict:
    checks: list[Check] = []
    X = P("x")
    for eps in (1, -1):
        f = P(f"1 + {2 * eps}*x + x^2 + B*y + y^2 + C*x*y")
        moved = f.subs({"x": X - eps})
        checks.append(_eq(f"eps={eps}: in X = x + eps", moved, f"x^2 + (B - ({eps})*C)*y + C*x*y + y^2"))
        checks.append(_eq(f"eps={eps}: Hess", criterion_system(moved)["hess"], "4 - C^2"))
        # C^2 = 4 makes the quadratic part a square: a double line
        sq = moved.subs({"B": P(f"({eps})*C")}) - P("(x + C*y/2)^2")
        checks.append(_eq(f"eps={eps}: X^2 + C*X*Y + Y^2 - (X + C*Y/2)^2", sq, "(1 - C^2/4)*y^2"))
        checks += _hat1_obstruction(eps)  # B - C*eps != 0
        checks += _hat2_obstruction(eps)  # B - C*eps == 0
    return EdgeVerdict("7", "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"branch B - C*eps != 0": "Hess = 4*y", "branch B - C*eps = 0": "K = 48*y^3"})


def _replicated(pid: str, checks: list[Check], residual: str) -> EdgeVerdict:
    return EdgeVerdict(pid, "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"residual": residual}, [REPLICATION_NOTE])


def _check_1() -> EdgeVerdict:
    return _replicated("1", _hat1_obstruction(1) + _hat1_obstruction(-1), "Hess = 4*y at x = 0")


def _check_3() -> EdgeVerdict:
    return _replicated("3", _hat3_obstruction(1) + _hat3_obstruction(-1),
                       "Hess = 12*x*y forces x = 0, where the singular point is a cusp")


def _check_4() -> EdgeVerdict:
    return _replicated("4", _hat1_obstruction(1) + _hat1_obstruction(-1), "Hess = 4*y at x = 0")


def _check_5() -> EdgeVerdict:
    return _replicated("5", _hat1_obstruction(1) + _hat1_obstruction(-1), "Hess = 4*y at x = 0")


def length_one_check(m1: int, m2: int) -> list[Check]:
    """phi = 1 + psi(y) + x*y^m2 on Conv{(1,0),(0,m1),(0,-m2)}: phi_x = y^m2, phi(x,0) = 1."""
    n = m1 + m2
    psi = " + ".join(f"c{k}*y^{k}" for k in range(1, n)) + f" + y^{n}"
    phi = P(f"1 + {psi} + x*y^{m2}")
    return [
        _eq(f"m1={m1}, m2={m2}: phi_x = y^m2", phi.diff("x"), f"y^{m2}"),
        _eq(f"m1={m1}, m2={m2}: phi(x, 0) = 1", phi.subs({"y": 0}), "1"),
    ]


def _check_len1() -> EdgeVerdict:
    checks = [c for m1 in (1, 2, 3) for m2 in (1, 2, 3) for c in length_one_check(m1, m2)]
    return EdgeVerdict("LEN1", "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"residual": "phi_x = y^m2 forces y = 0, where phi = 1"})


def _check_e_edge() -> EdgeVerdict:
    phi = P("1 + A*y + x^2*y + B*y^2 + x*y^2 + y^3/4")
    s = criterion_system(phi)
    on = {"y": P("-2*x")}
    spec = DeformationPatternSpec(2, 2, 1, P("x^2*y + x*y^2 + y^3/4"), P("1 + x^2*y"))
    fy_b0 = s["fy"].subs(on).subs({"B": 0})
    checks = [
        Check("deformation pattern", deformation_pattern_check(phi, spec).passed, str(phi)),
        _y_nonzero(phi),
        _eq("phi_x = y*(2x + y), so y = -2x", s["fx"], "2*x*y + y^2"),
        _eq("Hess at y = -2x", s["hess"].subs(on), "-8*B*x"),
        _eq("x = 0 gives y = 0 and phi = 1", phi.subs({"x": 0, "y": 0}), "1"),
        _eq("B = 0: phi_y at y = -2x", fy_b0, "A"),
        _eq("B = 0, A = 0: phi at y = -2x", phi.subs(on).subs({"B": 0, "A": 0}), "1"),
    ]
    return EdgeVerdict("E_EDGE", "NotTacnodalEdge", "NotTacnodalEdge", checks,
                       {"residual": "Hess = -8*B*x"}, ["only eps = 1 is replayed"])


_POSITIVE = {
    "III": ("R_III", "1 + A*y + x^2*y + B*y^2 + C*x*y^2 + D*y^3 + y^4",
            DeformationPatternSpec(2, 3, 1, P("x^2*y + y^4"), P("1 + x^2*y"))),
    "IV": ("R_IV", "1 + A*y + B*y^2 + C*y^3 + y^4 + x^2*y^2",
           DeformationPatternSpec(2, 2, 2, P("x^2*y^2 + y^4"), P("1 + x^2*y^2"))),
    "V": ("R_V", "1 + A*x + B*x*y + C*x*y^2 + x*y^4 + x^2",
          DeformationPatternSpec(4, 1, 1, P("x^4*y + y^2"), P("1 + x^4*y"), swap=True)),
}


def _check_positive(pid: str) -> EdgeVerdict:
    case_id, phi, spec = _POSITIVE[pid]
    res = verify_case(case_id)
    pat = deformation_pattern_check(P(phi), spec)
    checks = [Check("deformation pattern", pat.passed, str(pat.failing)),
              Check(f"{case_id} tacnode witness", res.passed, res.verdict)]
    verdict = "IsTacnodalEdge" if res.passed and pat.passed else "NotTacnodalEdge"
    return EdgeVerdict(pid, verdict, "IsTacnodalEdge", checks, res.witness)


_CHECKS = {"1": _check_1, "2": _check_2, "3": _check_3, "4": _check_4, "5": _check_5,
           "6": _check_6, "7": _check_7, "LEN1": _check_len1, "E_EDGE": _check_e_edge,
           "III": lambda: _check_positive("III"), "IV": lambda: _check_positive("IV"),
           "V": lambda: _check_positive("V")}


def edge_1tacnodal_check(pair_id: str) -> EdgeVerdict:
    if pair_id not in EDGE_CATALOG:
        raise KeyError(f"unknown edge id {pair_id!r}; known: {', '.join(EDGE_CATALOG)}")
    entry = EDGE_CATALOG[pair_id]
    out = _CHECKS[pair_id]()
    for a, b in entry.cells:
        out.checks.insert(0, Check(f"{a} and {b} have edges of length {entry.length}",
                                   _has_edge_of_length(a, entry.length)
                                   and _has_edge_of_length(b, entry.length), ""))
    return out
