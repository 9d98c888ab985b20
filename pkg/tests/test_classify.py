import pytest
from hypothesis import given
from hypothesis import strategies as st

from tacnodal.classify import (KINDS, case_tag, census_consistency, classify,
                               detect_tacnodal_feature, find_features, theorem_gate)
from tacnodal.construct import FEATURE_CELLS, positive_example, realizes
from tacnodal.lattice import FEATURE_POLYTOPES, LatticePolytope, UnimodularMap
from tacnodal.tropical import (DualSubdivision, TropicalPolynomial, dual_subdivision,
                               subdivision_census)


def _P(*pts):
    return LatticePolytope.hull(pts)


def cells(*polys):
    return DualSubdivision.from_cells(polys)


UNIT_SQUARE_SPLIT = cells(_P((0, 0), (1, 0), (1, 1)), _P((0, 0), (1, 1), (0, 1)))


def test_single_cell_feature():
    f = detect_tacnodal_feature(cells(FEATURE_POLYTOPES["I"]))
    assert f.kind == "I" and f.cells == (0,)


def test_glued_iv():
    S = cells(_P((0, 0), (2, 0), (1, 2)), _P((0, 0), (2, 0), (1, -2)))
    f = detect_tacnodal_feature(S)
    assert f.kind == "IV" and set(f.cells) == {0, 1}
    assert f.shared_edges == (((0, 0), (2, 0)),)
    # the unordered pair is reported once
    assert len([g for g in find_features(S) if g.kind == "IV"]) == 1


def test_iv_needs_the_long_edge_shared():
    # two Delta_IV copies that only share a unit edge are not a feature
    S = cells(_P((0, 0), (2, 0), (1, 2)), _P((2, 0), (3, 2), (1, 2)))
    assert detect_tacnodal_feature(S) is None


def test_no_feature():
    assert detect_tacnodal_feature(UNIT_SQUARE_SPLIT) is None
    c = classify(UNIT_SQUARE_SPLIT)
    assert c.verdict == "NotTacnodal" and c.label() == "NotTacnodal(no feature)"


def test_vi_alone_is_case_a():
    S = cells(FEATURE_POLYTOPES["VI"])
    c = classify(S)
    assert c.label() == "TropicalOneTacnodal(VI)" and c.case == "A"
    assert c.census.npar == {4: 1}
    rep = census_consistency(S)
    assert rep.passed, rep.checks
    assert c.census.num_vertices == c.census.lattice_points - 2


def test_e_glued_is_case_c():
    S = cells(_P((0, 0), (2, 0), (0, 1), (1, 2)), _P((0, 0), (2, 0), (0, -1)))
    c = classify(S)
    assert c.label() == "TropicalOneTacnodal(E)" and c.case == "C"
    rep = census_consistency(S)
    assert rep.passed, rep.checks


def test_non_unit_remainder_is_rejected():
    # Delta_I next to an area-2 triangle
    S = cells(FEATURE_POLYTOPES["I"], _P((2, 0), (4, 0), (0, 7)))
    c = classify(S)
    assert not c.is_tacnodal
    assert "[1]" in c.reason and c.alternates[0].kind == "I"


def test_case_tags():
    base = subdivision_census(UNIT_SQUARE_SPLIT)
    from dataclasses import replace
    assert case_tag(base) == "A"
    assert case_tag(replace(base, boundary_defect=1)) == "B"
    assert case_tag(replace(base, is_tp=False)) == "C"
    assert case_tag(replace(base, is_tp=False, boundary_defect=1)) == "D"
    assert case_tag(replace(base, boundary_defect=2)) is None


def tp(vals):
    return TropicalPolynomial.from_mapping(vals)


def test_gate_regimes():
    line = theorem_gate(tp({(0, 0): 0, (1, 0): 0, (0, 1): 0}))
    assert line.rank == 2 == line.lattice_points - 1
    assert "out of 1-tacnodal scope" in line.regime and line.classification is None

    g = theorem_gate(tp({(0, 7): 0, (1, 0): 0, (2, 0): 0}))
    assert (g.lattice_points, g.rank) == (6, 2)
    assert g.classification.label() == "TropicalOneTacnodal(I)"
    assert "cannot be checked" in g.note

    low = theorem_gate(tp({(0, 0): 0, (3, 0): 0, (0, 3): 0}))
    assert low.rank == 2 < low.lattice_points - 4
    assert "outside" in low.regime and not low.in_range


# ---------------------------------------------------------------- positive suite

@pytest.mark.parametrize("kind", KINDS)
def test_positive_example(kind):
    ex = positive_example(kind)
    S = dual_subdivision(ex.polynomial)
    assert realizes(S, kind)
    c = classify(S)
    assert c.label() == f"TropicalOneTacnodal({kind})"
    # kinds are mutually exclusive on the suite
    assert {f.kind for f in find_features(S)} == {kind}
    assert c.census.rk == c.census.lattice_points - 4
    assert all(S.cells[k].area2 == 1 for k in range(len(S.cells)) if k not in c.feature.cells)
    rep = census_consistency(S)
    assert rep.passed, rep.checks


def test_unknown_kind():
    with pytest.raises(KeyError):
        positive_example("X")


def test_feature_cells_match_the_catalog():
    for kind, cs in FEATURE_CELLS.items():
        S = DualSubdivision.from_cells(cs)
        assert detect_tacnodal_feature(S).kind == kind


MAPS = [UnimodularMap(0, 1, 1, 0), UnimodularMap(1, 2, 0, 1, -3, 1), UnimodularMap(-1, 0, 1, 1, 0, 2)]


@given(st.sampled_from(KINDS), st.sampled_from(MAPS))
def test_classify_is_unimodular_invariant(kind, A):
    F = positive_example(kind).polynomial
    c1 = classify(dual_subdivision(F))
    c2 = classify(dual_subdivision(F.transform(A)))
    assert c1.label() == c2.label() and c1.case == c2.case and c1.census == c2.census
