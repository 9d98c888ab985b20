"""Local singularity test for A1/A2/A3 points of a plane curve f = 0.

With f_xx(p) != 0 the point p is a tacnode iff f, f_x, f_y, Hess and K vanish
at p while 3 a12^2 - f_xx a04 does not.

In the frame u = f_xx x + f_xy y, v = y the curve reads
f_uu/2 u^2 + f_uvv/2 u v^2 + f_vvvv/24 v^4 + ..., and two distinct tangent
branches need (f_uvv/2)^2 - 4 (f_uu/2)(f_vvvv/24) != 0, i.e.
3 f_uvv^2 - f_uu f_vvvv != 0. The form a12^2 - 4 f_xx a04, which treats the
derivatives as Taylor coefficients, is kept as ``naive_discriminant`` for
comparison only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .poly import ExactPoly
from .relations import TriangularRelations, reduce_mod


class Verdict(str, Enum):
    NOT_SINGULAR = "NotSingular"
    PRECONDITION_VIOLATED = "PreconditionViolated"
    NODE = "Node"
    CUSP = "Cusp"
    TACNODE = "Tacnode"
    DEGENERATE = "DegenerateOrHigher"


@dataclass(frozen=True)
class Jet:
    """Partial derivatives of f up to order four, evaluated at a point."""

    d: Mapping[tuple[int, int], ExactPoly]

    def __getitem__(self, key: str) -> ExactPoly:
        return self.d[(key.count("x"), key.count("y"))]


@dataclass(frozen=True)
class TacnodeInvariants:
    value: ExactPoly
    fx: ExactPoly
    fy: ExactPoly
    fxx: ExactPoly
    hess: ExactPoly
    k: ExactPoly
    a12: ExactPoly
    a04: ExactPoly
    discriminant: ExactPoly  # 3 a12^2 - fxx a04
    naive_discriminant: ExactPoly  # a12^2 - 4 fxx a04

    def as_dict(self) -> dict[str, str]:
        return {"f": str(self.value), "fx": str(self.fx), "fy": str(self.fy),
                "fxx": str(self.fxx), "Hess": str(self.hess), "K": str(self.k),
                "a12": str(self.a12), "a04": str(self.a04),
                "disc": str(self.discriminant), "naive_disc": str(self.naive_discriminant)}


def jet(f: ExactPoly, point: Sequence[object], R: TriangularRelations | None = None,
        variables: tuple[str, str] = ("x", "y"), order: int = 4) -> Jet:
    vx, vy = variables
    at = {vx: point[0], vy: point[1]}
    out = {}
    for a in range(order + 1):
        fa = f.diff(vx, a)
        for b in range(order + 1 - a):
            out[(a, b)] = reduce_mod(fa.diff(vy, b).subs(at), R)
    return Jet(out)


def invariants_from_jet(j: Jet, R: TriangularRelations | None = None) -> TacnodeInvariants:
    def m(*xs: ExactPoly) -> ExactPoly:
        acc = xs[0]
        for x in xs[1:]:
            acc = reduce_mod(acc * x, R)
        return acc

    fxx, fxy, fyy = j["xx"], j["xy"], j["yy"]
    hess = reduce_mod(fxx * fyy - fxy * fxy, R)
    k = reduce_mod(
        -m(fxy, fxy, fxy, j["xxx"]) + 3 * m(fxx, fxy, fxy, j["xxy"])
        - 3 * m(fxx, fxx, fxy, j["xyy"]) + m(fxx, fxx, fxx, j["yyy"]), R)
    a12 = reduce_mod(
        m(fxy, fxy, j["xxx"]) - 2 * m(fxx, fxy, j["xxy"]) + m(fxx, fxx, j["xyy"]), R)
    a04 = reduce_mod(
        m(fxy, fxy, fxy, fxy, j["xxxx"]) - 4 * m(fxx, fxy, fxy, fxy, j["xxxy"])
        + 6 * m(fxx, fxx, fxy, fxy, j["xxyy"]) - 4 * m(fxx, fxx, fxx, fxy, j["xyyy"])
        + m(fxx, fxx, fxx, fxx, j["yyyy"]), R)
    a12sq = m(a12, a12)
    fa = m(fxx, a04)
    disc = reduce_mod(3 * a12sq - fa, R)
    naive = reduce_mod(a12sq - 4 * fa, R)
    return TacnodeInvariants(j[""], j["x"], j["y"], fxx, hess, k, a12, a04, disc, naive)


def tacnode_invariants(f: ExactPoly, point: Sequence[object], R: TriangularRelations | None = None,
                       variables: tuple[str, str] = ("x", "y")) -> TacnodeInvariants:
    """Hess, K, a12, a04 and f_xx of ``f`` at ``point``, reduced modulo ``R``."""
    return invariants_from_jet(jet(f, point, R, variables), R)


def classify_invariants(inv: TacnodeInvariants) -> Verdict:
    if not (inv.value.is_zero() and inv.fx.is_zero() and inv.fy.is_zero()):
        return Verdict.NOT_SINGULAR
    if inv.fxx.is_zero():
        return Verdict.PRECONDITION_VIOLATED
    if not inv.hess.is_zero():
        return Verdict.NODE
    if not inv.k.is_zero():
        return Verdict.CUSP
    if not inv.discriminant.is_zero():
        return Verdict.TACNODE
    return Verdict.DEGENERATE


def tacnode_check(f: ExactPoly, point: Sequence[object], R: TriangularRelations | None = None,
                  variables: tuple[str, str] = ("x", "y")) -> Verdict:
    """Verdict of the tacnode criterion at ``point``.

    In a quotient ring "nonzero" means nonzero as a ring element; see
    :func:`tacnodal.algebra.cases.nonvanishing_on_roots` for the stronger
    check at every root of a univariate modulus.
    """
    return classify_invariants(tacnode_invariants(f, point, R, variables))
