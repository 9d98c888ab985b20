import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tacnodal.algebra import ExactPoly, Verdict, parse_poly, tacnode_check, tacnode_invariants
from tacnodal.algebra.tacnode import classify_invariants

from helpers import coordinate_identities, nonzero_rationals, random_quartic, rationals

NORMAL_FORMS = {
    "x^2 - y^2": Verdict.NODE,
    "x^2 - y^3": Verdict.CUSP,
    "x^2 - y^4": Verdict.TACNODE,
    "x^2 + y^4": Verdict.TACNODE,
    "x^2 - y^5": Verdict.DEGENERATE,
    "x^2": Verdict.DEGENERATE,
    "y^2 - x^3": Verdict.PRECONDITION_VIOLATED,
    "x + y^2": Verdict.NOT_SINGULAR,
}


@pytest.mark.parametrize("text,verdict", NORMAL_FORMS.items())
def test_normal_forms(text, verdict):
    assert tacnode_check(parse_poly(text), (0, 0)) == verdict


def test_off_curve_point_is_not_singular():
    assert tacnode_check(parse_poly("x^2 - y^4"), (1, 0)) == Verdict.NOT_SINGULAR


def test_double_curve_is_not_a_tacnode():
    # (x - y^2)^2: the two branches coincide, so the singularity is not isolated
    inv = tacnode_invariants(parse_poly("(x - y^2)^2"), (0, 0))
    assert inv.hess.is_zero() and inv.k.is_zero() and inv.discriminant.is_zero()
    assert tacnode_check(parse_poly("(x - y^2)^2"), (0, 0)) == Verdict.DEGENERATE
    # the Taylor-coefficient form does not vanish here
    assert inv.naive_discriminant == ExactPoly.const(-2816)


def test_tacnode_where_naive_form_vanishes():
    # (x + 6 y^2)^2 - 33 y^4: distinct tangent branches, yet a12^2 = 4 f_xx a04
    f = parse_poly("x^2 + 12*x*y^2 + 3*y^4")
    inv = tacnode_invariants(f, (0, 0))
    assert inv.naive_discriminant.is_zero()
    assert tacnode_check(f, (0, 0)) == Verdict.TACNODE


@given(nonzero_rationals, nonzero_rationals)
def test_product_of_tangent_parabolas(a, b):
    """(x - a y^2)(x - b y^2) is a tacnode iff a != b."""
    f = parse_poly("x") - a * parse_poly("y^2")
    g = parse_poly("x") - b * parse_poly("y^2")
    want = Verdict.TACNODE if a != b else Verdict.DEGENERATE
    assert tacnode_check(f * g, (0, 0)) == want


@given(st.sampled_from(["x^2 - y^2", "x^2 - y^3", "x^2 - y^4", "x^2 - 3*y^4 + x*y^2"]),
       rationals, rationals, nonzero_rationals, nonzero_rationals, rationals, rationals,
       rationals)
def test_verdict_is_coordinate_invariant(text, a, c, d, unit, p, q, h):
    """Triangular changes x -> x + a y + c y^2, y -> d y, a unit, a translation and
    order >= 5 terms keep the singularity type."""
    f = parse_poly(text)
    X, Y = parse_poly("x"), parse_poly("y")
    g = f.subs({"x": X + a * Y + c * Y * Y, "y": d * Y}) * unit
    g = g + h * (X ** 5 + X * Y ** 4 * Y + Y ** 6)
    g = g.subs({"x": X - p, "y": Y - q})
    assert tacnode_check(g, (p, q)) == tacnode_check(f, (0, 0))


def test_invariants_inside_quotient_ring():
    from tacnodal.algebra import TriangularRelations
    R = TriangularRelations.univariate(parse_poly("s^2 - 2"), "s")
    # (x - s y^2)(x + s y^2) = x^2 - 2 y^4 written with s = sqrt(2)
    f = parse_poly("x^2 - s^2*y^4")
    assert tacnode_check(f, (0, 0), R) == Verdict.TACNODE


def test_coordinate_identities_on_a_few_quartics():
    rng = random.Random(7)
    for _ in range(5):
        assert all(coordinate_identities(random_quartic(rng)).values())


def test_classify_invariants_order():
    inv = tacnode_invariants(parse_poly("x^2 - y^4"), (0, 0))
    assert classify_invariants(inv) == Verdict.TACNODE
    # f_xx = 2, a12 = 0, a04 = 2^4 * (-24)
    assert inv.a04 == ExactPoly.const(-384)
    assert inv.discriminant == ExactPoly.const(768)
    assert inv.naive_discriminant == ExactPoly.const(3072)


def test_coordinate_identities_catch_a_wrong_invariant(monkeypatch):
    import dataclasses

    import helpers
    real = helpers.tacnode_invariants

    def skewed(f, p, *a):
        inv = real(f, p, *a)
        return dataclasses.replace(inv, a12=inv.a12 * 2)

    monkeypatch.setattr(helpers, "tacnode_invariants", skewed)
    res = coordinate_identities(random_quartic(random.Random(3)))
    assert not res["f_uvv = a12/f_xx^3"]
    assert res["f_vvvv = a04/f_xx^4"]
