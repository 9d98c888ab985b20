"""The seven acceptance criteria, each at exact tolerance.

Each test records its outcome in ``conftest.ACCEPTANCE``; the terminal summary
prints one PASS/FAIL line per criterion.
"""

import random
import time
from contextlib import contextmanager

import pytest

import conftest
from helpers import coordinate_identities, random_quartic
from tacnodal.algebra.cases import POSITIVE_CASES, verify_case
from tacnodal.classify import KINDS, classify
from tacnodal.construct import positive_example
from tacnodal.corpus import corpus
from tacnodal.lattice import catalog_match, enumerate_class
from tacnodal.refine import edge_1tacnodal_check
from tacnodal.tropical import dual_subdivision, subdivision_census, tropical_curve, verify_duality


@contextmanager
def criterion(k, desc):
    conftest.ACCEPTANCE[k] = (False, desc)
    yield
    conftest.ACCEPTANCE[k] = (True, desc)


# ---------------------------------------------------------------- 1

ENUMERATION = [
    # (m, interior, lengths, parallel, expected class count)
    (3, 3, (1, 1, 1), None, 2),
    (3, 2, (2, 1, 1), None, 1),
    (3, 1, (2, 1, 1), None, 1),
    (3, 0, (4, 1, 1), None, 1),
    (4, 2, (1, 1, 1, 1), True, 1),
    (5, 1, (1, 1, 1, 1, 1), None, 1),
    (4, 2, (1, 1, 1, 1), False, 3),
    (4, 1, (2, 1, 1, 1), None, 1),
    (3, 1, (2, 2, 1), None, 0),
    (3, 1, (3, 1, 1), None, 0),
    (3, 0, (2, 2, 1), None, 0),
    (3, 0, (3, 2, 1), None, 0),
    (5, 0, (2, 1, 1, 1, 1), None, 0),
    (4, 0, (2, 2, 1, 1), False, 0),
    (4, 0, (1, 1, 1, 1), False, 0),
]


def test_criterion_1_enumeration():
    with criterion(1, "classification by exhaustive enumeration (15 classes/empties)"):
        for m, interior, lengths, par, want in ENUMERATION:
            t = time.perf_counter()
            reps = enumerate_class(m, interior, lengths, par)
            assert time.perf_counter() - t < 10, (m, interior, lengths)
            assert len(reps) == want, (m, interior, lengths, par, reps)
        tags = sorted(catalog_match(P).tag for P in enumerate_class(3, 3, (1, 1, 1)))
        assert tags == ["I", "II"]


# ---------------------------------------------------------------- 2

def test_criterion_2_tacnode_witnesses():
    with criterion(2, "nine tacnode witnesses, exact, < 1 s each"):
        for case_id in POSITIVE_CASES:
            t = time.perf_counter()
            res = verify_case(case_id)
            assert time.perf_counter() - t < 1.0, case_id
            assert res.passed and res.verdict == "Tacnode", case_id
        w = {c: verify_case(c).witness for c in ("I", "II", "VI", "VII", "VIII", "IX")}
        assert w["I"]["point"].startswith("(8/5,") and w["I"]["ring"] == "{y0^7 -> 64/25}"
        assert w["II"]["ring"] == "{y0^14 -> -y0^7 - 1}"
        assert w["VI"]["point"].startswith("(1/8,") and w["VI"]["C"] == "64"
        assert (w["VI"]["A"], w["VI"]["B"]) == ("-9*y0^2", "-9*y0")  # -9/y0, -9/y0^2 with y0^3 = 1
        assert w["VII"]["point"] == "(-1/2, -1/2)"
        assert w["VII"]["A"] == w["VII"]["B"] == w["VII"]["C"] == "-4"
        assert w["VIII"]["point"] == "(-8/5, -8/5)"
        assert (w["VIII"]["A"], w["VIII"]["B"], w["VIII"]["C"]) == (
            "75/64", "-625/4096", "3125/262144")
        assert w["IX"]["point"] == "((-6/5+2/5i), (2/5-4/5i))"
        assert w["IX"]["point_conjugate"] == "((-6/5-2/5i), (2/5+4/5i))"


# ---------------------------------------------------------------- 3

NEGATIVE = {"E_NEG": "NoTacnode", "NONREG_1": "NoTacnode", "NONREG_2": "NoTacnode",
            "NONREG_3": "NoTacnode", "NONREG_4": "NoTacnode", "NONREG_5": "NoTacnode",
            "NONISOL": "NonIsolated"}


def test_criterion_3_negative_results():
    with criterion(3, "negative cases and the non-tacnodal edge catalog"):
        for case_id, verdict in NEGATIVE.items():
            res = verify_case(case_id)
            assert res.passed and res.verdict == verdict, case_id
        assert verify_case("NONREG_3").witness["K"] == "48*x"
        assert verify_case("NONREG_4").witness["Hess"] == "-c11^2"
        assert verify_case("E_NEG").witness["f_y"] == "-48"
        names = {c.name for c in verify_case("NONISOL").checks}
        assert {"c21 c00 = c20 c01 at the solution", "f = (y+1)(x - 1)^2",
                "f = (y+1)(x + 1)^2"} <= names
        for pair in ("2", "6", "7", "LEN1", "E_EDGE"):
            v = edge_1tacnodal_check(pair)
            assert v.passed and v.verdict == "NotTacnodalEdge", pair
        assert "48*y^3" in edge_1tacnodal_check("2").witness["residual"]


# ---------------------------------------------------------------- 4 and 5

@pytest.fixture(scope="module")
def census_corpus():
    t = time.perf_counter()
    out = []
    for F in corpus(seed=2024, n=500):
        S = dual_subdivision(F)
        out.append((F, S, subdivision_census(S)))
    return out, time.perf_counter() - t


def test_criterion_4_rank_properties(census_corpus):
    with criterion(4, "rank >= rkexp, equality on TP, 2d <= script N (500 instances, < 30 s)"):
        items, elapsed = census_corpus
        assert len(items) == 500
        assert all(len(F.support) <= 12 for F, _, _ in items)
        for F, S, c in items:
            assert c.rk >= c.rkexp
            if c.is_tp:
                assert c.rk == c.rkexp
            else:
                assert 2 * c.d <= c.script_n
        # both regimes occur
        assert any(c.is_tp for _, _, c in items) and any(not c.is_tp for _, _, c in items)
        assert elapsed < 30


def test_criterion_5_duality_and_balancing(census_corpus):
    with criterion(5, "duality passes and balancing residual is zero (same corpus)"):
        t = time.perf_counter()
        for F, S, _ in census_corpus[0]:
            rep = verify_duality(tropical_curve(F), S)
            assert rep.passed, rep.first_violation
            assert all(r == (0, 0) for r in rep.balancing.values())
        assert census_corpus[1] + time.perf_counter() - t < 30


# ---------------------------------------------------------------- 6

def test_criterion_6_positive_suite():
    with criterion(6, "ten feature kinds realized, verdict and rank = #lattice points - 4"):
        for kind in KINDS:
            t = time.perf_counter()
            ex = positive_example(kind)
            c = classify(dual_subdivision(ex.polynomial))
            assert time.perf_counter() - t < 1.0, kind
            assert c.label() == f"TropicalOneTacnodal({kind})"
            assert c.census.rk == c.census.lattice_points - 4


# ---------------------------------------------------------------- 7

def test_criterion_7_coordinate_identities():
    with criterion(7, "six change-of-coordinates identities on 100 random quartics"):
        rng = random.Random(2)
        for _ in range(100):
            f = random_quartic(rng)
            res = coordinate_identities(f)
            assert all(res.values()), (str(f), res)
