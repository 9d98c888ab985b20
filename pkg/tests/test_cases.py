import time
from fractions import Fraction

import pytest
import sympy as sp

from tacnodal.algebra import Gauss, TriangularRelations, parse_poly
from tacnodal.algebra.cases import (CASES, POSITIVE_CASES, case_I_gcd_route, case_II_gcd_route,
                                    criterion_system, nonvanishing_on_roots, replay_elimination,
                                    verify_case)

NEGATIVE = {"E_NEG": "NoTacnode", "NONREG_1": "NoTacnode", "NONREG_2": "NoTacnode",
            "NONREG_3": "NoTacnode", "NONREG_4": "NoTacnode", "NONREG_5": "NoTacnode",
            "NONISOL": "NonIsolated", "CUSP_E": "Cusp"}


@pytest.mark.parametrize("case_id", CASES)
def test_case_passes_quickly(case_id):
    t = time.perf_counter()
    res = verify_case(case_id)
    assert time.perf_counter() - t < 1.0
    failing = [(c.name, c.detail) for c in res.checks if not c.passed]
    assert res.passed, failing
    if case_id in POSITIVE_CASES:
        assert res.verdict == "Tacnode"
    else:
        assert res.verdict == NEGATIVE[case_id]


def test_unknown_case():
    with pytest.raises(KeyError):
        verify_case("XI")


@pytest.mark.parametrize("case_id", POSITIVE_CASES)
def test_replay_relations_all_match(case_id):
    T = replay_elimination(case_id)
    assert T.relations and T.all_relations_match


def test_witness_values():
    vii = verify_case("VII").witness
    assert vii["point"] == "(-1/2, -1/2)"
    assert vii["A"] == vii["B"] == vii["C"] == "-4"
    viii = verify_case("VIII").witness
    assert viii["point"] == "(-8/5, -8/5)"
    assert (viii["A"], viii["B"], viii["C"]) == ("75/64", "-625/4096", "3125/262144")
    vi = verify_case("VI").witness
    assert vi["C"] == "64"
    assert verify_case("I").witness["ring"] == "{y0^7 -> 64/25}"


def test_ix_constant_matches_reference_form():
    w = verify_case("IX").witness
    assert w["C"] == str(Gauss(Fraction(41, 256), Fraction(-38, 256)))
    assert w["C_conjugate"] == "(41/256+19/128i)"


def test_case_I_gcd_route():
    g = case_I_gcd_route()
    assert g["gcd_is_(t-y0)^3"] == "True"
    assert g["squarefree_norm"] == "t^7 - 64/25"
    assert g["resultant_norm_of_t-y0"] == g["squarefree_norm"]
    assert parse_poly(g["norm_of_gcd"]) == parse_poly("(t^7 - 64/25)^3")
    assert g["matches_reference"] == "False"
    # the modulus is irreducible, so Q[y0]/(m) is a field
    t = sp.Symbol("t")
    assert sp.Poly(25 * t ** 7 - 64, t).is_irreducible


def test_case_II_gcd_route():
    assert parse_poly(case_II_gcd_route()) == parse_poly("s - y0^7")


def test_nonisolated_factorization():
    # a double factor makes f, f_x, f_y vanish along the whole line x = x0
    f = parse_poly("(y + 1)*(x - 3)^2")
    s = criterion_system(f)
    for key in ("f", "fx", "fy", "hess"):
        assert s[key].subs({"x": 3}).is_zero()


def test_nonvanishing_on_roots():
    R = TriangularRelations.univariate(parse_poly("t^2 - 1"), "t")
    assert nonvanishing_on_roots(parse_poly("t + 2"), R)
    assert not nonvanishing_on_roots(parse_poly("t + 1"), R)
    assert not nonvanishing_on_roots(parse_poly("t^2 - 1"), R)
