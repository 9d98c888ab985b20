"""Shared strategies and sympy conversions for the test suite."""

from __future__ import annotations

import random

from fractions import Fraction
from math import factorial

import sympy as sp
from hypothesis import strategies as st

from tacnodal.algebra import ExactPoly, Gauss, parse_poly, tacnode_invariants

VARS = ("x", "y", "A")
SYM = {v: sp.Symbol(v) for v in VARS}

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)
nonzero_rationals = rationals.filter(lambda q: q != 0)
gauss = st.builds(Gauss, rationals, rationals)


def to_sympy_scalar(c):
    if isinstance(c, Gauss):
        return sp.Rational(c.re.numerator, c.re.denominator) + sp.I * sp.Rational(
            c.im.numerator, c.im.denominator)
    c = Fraction(c)
    return sp.Rational(c.numerator, c.denominator)


def to_sympy(p: ExactPoly):
    out = sp.Integer(0)
    for e, c in p.terms.items():
        term = to_sympy_scalar(c)
        for v, a in zip(p.vars, e):
            term *= sp.Symbol(v) ** a
        out += term
    return sp.expand(out)


@st.composite
def polys(draw, variables=VARS, max_deg=3, max_terms=5, complex_coeffs=False):
    n = draw(st.integers(0, max_terms))
    coeff = gauss if complex_coeffs else rationals
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in variables)
        terms[e] = draw(coeff)
    return ExactPoly(variables, terms)


def random_quartic(rng: random.Random) -> ExactPoly:
    terms = {}
    for i in range(5):
        for j in range(5 - i):
            if rng.random() < 0.8:
                terms[(i, j)] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    terms[(2, 0)] = terms.get((2, 0), 0) or Fraction(1)
    return ExactPoly(("x", "y"), terms)


def coordinate_identities(f: ExactPoly) -> dict[str, bool]:
    """Six identities for u = f_xx x + f_xy y, v = y at a symbolic point (p, q).

    f is rewritten in (u, v) around (p, q) by substitution in sympy's sparse
    polynomial ring; derivatives are read off Taylor coefficients. The frozen
    values 1/f_xx(p, q) and f_xy(p, q) stay symbols w, b until the end, so
    everything is polynomial. The right-hand sides come from ``tacnode_invariants``.
    """
    R, p, q, w, b, u, v = sp.ring("p q w b u v", sp.QQ)
    X, Y = p + w * (u - b * v), q + v
    Fh = R(0)
    for (i, j), c in f.exponents_in(("x", "y")).items():
        Fh += R(to_sympy(c)) * X ** i * Y ** j
    P2, p2, q2 = sp.ring("p q", sp.QQ)
    F2 = P2(0)
    for (i, j), c in f.exponents_in(("x", "y")).items():
        F2 += P2(to_sympy(c)) * p2 ** i * q2 ** j
    fxx, fxy = F2.diff(p2).diff(p2), F2.diff(p2).diff(q2)

    def d(nu, nv, k):
        """f_xx^k times the (nu, nv) derivative at u = v = 0."""
        out = P2(0)
        for (ep, eq, ew, eb, eu, ev), c in Fh.terms():
            if (eu, ev) == (nu, nv):
                assert ew <= k
                out += c * p2 ** ep * q2 ** eq * fxx ** (k - ew) * fxy ** eb
        return out * factorial(nu) * factorial(nv)

    inv = tacnode_invariants(f, (parse_poly("p"), parse_poly("q")))

    def rhs(name):
        g = P2(0)
        for (ep, eq), c in getattr(inv, name).exponents_in(("p", "q")).items():
            g += P2(to_sympy(c)) * p2 ** ep * q2 ** eq
        return g

    return {
        "f_uu = 1/f_xx": d(2, 0, 2) == fxx,
        "f_uv = 0": d(1, 1, 2) == 0,
        "f_vv = Hess/f_xx": d(0, 2, 2) == rhs("hess") * fxx,
        "f_uvv = a12/f_xx^3": d(1, 2, 3) == rhs("a12"),
        "f_vvv = K/f_xx^3": d(0, 3, 3) == rhs("k"),
        "f_vvvv = a04/f_xx^4": d(0, 4, 4) == rhs("a04"),
    }
