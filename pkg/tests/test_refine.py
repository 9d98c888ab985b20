import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st

from tacnodal.algebra import parse_poly
from tacnodal.lattice import LatticePolytope, lattice_length
from tacnodal.refine import (EDGE_CATALOG, REPLICATION_NOTE, DeformationPatternSpec, EdgeData,
                             deformation_pattern_check, edge_1tacnodal_check, edge_normalizer,
                             exceptional_polytope, length_one_check, normalizer_conditions,
                             shared_edge, truncation)

P = parse_poly
x, y, t, A, B = sp.symbols("x y t A B")


def no_tacnode_oracle(phi, with_k=True):
    """Groebner basis of {phi, phi_x, phi_y, Hess, (K), y*t - 1} is {1}: no tacnode on the torus."""
    fx, fy = sp.diff(phi, x), sp.diff(phi, y)
    fxx, fxy, fyy = sp.diff(phi, x, 2), sp.diff(phi, x, y), sp.diff(phi, y, 2)
    hess = fxx * fyy - fxy ** 2
    eqs = [phi, fx, fy, hess, y * t - 1]
    if with_k:
        k = (-fxy ** 3 * sp.diff(phi, x, 3) + 3 * fxx * fxy ** 2 * sp.diff(phi, x, 2, y)
             - 3 * fxx ** 2 * fxy * sp.diff(phi, x, y, 2) + fxx ** 3 * sp.diff(phi, y, 3))
        eqs.append(k)
    gens = sorted(phi.free_symbols | {t}, key=str)
    return list(sp.groebner(eqs, *gens, order="grevlex")) == [1]


# ---------------------------------------------------------------- exceptional polytopes

@pytest.mark.parametrize("args,verts", [
    ((2, 1, 1), [(2, 0), (0, 1), (0, -1)]),
    ((2, 2, 1), [(2, 0), (0, 2), (0, -1)]),
    ((2, 3, 1), [(0, -1), (2, 0), (0, 3)]),
])
def test_exceptional_examples(args, verts):
    assert exceptional_polytope(*args) == LatticePolytope.hull(verts)


@given(st.integers(2, 8), st.integers(1, 8), st.integers(1, 8))
def test_exceptional_shape(m, m1, m2):
    D = exceptional_polytope(m, m1, m2)
    assert set(D.vertices) == {(m, 0), (0, m1), (0, -m2)}
    assert lattice_length((0, -m2), (0, 0)) == m2 and lattice_length((0, 0), (0, m1)) == m1
    assert any({a, b} == {(0, -m2), (0, m1)} for a, b in D.edges())
    assert (0, 0) in D.boundary_points()


@pytest.mark.parametrize("args", [(1, 1, 1), (2, 0, 1), (2, 1, 0)])
def test_exceptional_range(args):
    with pytest.raises(ValueError):
        exceptional_polytope(*args)


def test_edge_data():
    P1 = LatticePolytope.hull([(0, 0), (2, 0), (1, 3)])
    P2 = LatticePolytope.hull([(0, 0), (2, 0), (0, -1)])
    assert shared_edge(P1, P2) == ((0, 0), (2, 0))
    E = EdgeData.from_cells(P1, P2, 3, 1)
    assert E.m == 2 and E.exceptional() == exceptional_polytope(2, 3, 1)


# ---------------------------------------------------------------- normalizer

SQ = LatticePolytope.hull([(0, 0), (2, 0), (0, 2), (2, 2)])


def test_normalizer_vertical_edge():
    M = edge_normalizer(((0, 0), (0, 2)), SQ)
    assert M.linear() in (((0, 1), (-1, 0)), ((0, -1), (1, 0)), ((0, 1), (1, 0)), ((0, -1), (-1, 0)))
    assert all(normalizer_conditions(M, ((0, 0), (0, 2)), SQ).values())
    assert M((0, 0))[1] == M((0, 2))[1] == 0


def test_normalizer_horizontal_edge_is_a_translation_or_reflection():
    N = LatticePolytope.hull([(3, 5), (6, 5), (4, 7)])
    M = edge_normalizer(((3, 5), (6, 5)), N)
    assert M.a == 1 and M.b == 0 and abs(M.d) == 1 and M.c == 0
    assert all(normalizer_conditions(M, ((3, 5), (6, 5)), N).values())


def test_normalizer_slanted_edge():
    N = LatticePolytope.hull([(1, 1), (3, 2), (0, 4)])
    M = edge_normalizer(((1, 1), (3, 2)), N)
    a, b = M((1, 1)), M((3, 2))
    assert a[1] == b[1] and abs(b[0] - a[0]) == 1  # primitive direction (2, 1) goes to (+-1, 0)
    assert all(normalizer_conditions(M, ((1, 1), (3, 2)), N).values())


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=3, max_size=7, unique=True),
       st.booleans())
def test_normalizer_conditions_hold(pts, flip):
    from tacnodal.lattice import convex_hull
    assume(len(convex_hull(pts)) >= 3)
    N = LatticePolytope.hull(pts)
    for sigma in N.edges():
        M = edge_normalizer(sigma, N, flip=flip)
        assert all(normalizer_conditions(M, sigma, N, flip=flip).values())
        xs = [M(v)[0] for v in N.vertices]
        assert (max(xs) if flip else min(xs)) == 0


# ---------------------------------------------------------------- patterns

def test_pattern_on_hat2_passes():
    spec = DeformationPatternSpec(2, 2, 1, P("x^2*y + y^3"), P("1 + x^2*y"))
    v = deformation_pattern_check(P("1 + A*y + x^2*y + B*y^2 + y^3"), spec)
    assert v.passed and v.failing is None


def test_pattern_with_x_slot_fails_a():
    spec = DeformationPatternSpec(2, 2, 1)
    v = deformation_pattern_check(P("1 + A*y + x*y + x^2*y + B*y^2 + y^3"), spec)
    assert not v.passed and v.failing.startswith("(a)")


def test_mixed_x_terms_allowed():
    spec = DeformationPatternSpec(2, 3, 1, P("x^2*y + y^4"), P("1 + x^2*y"))
    v = deformation_pattern_check(P("1 + A*y + x^2*y + B*y^2 + C*x*y^2 + D*y^3 + y^4"), spec)
    assert v.passed and "mixed" in v.note


def test_pattern_wrong_truncation_fails_b():
    spec = DeformationPatternSpec(2, 2, 1, P("x^2*y + 2*y^3"), None)
    v = deformation_pattern_check(P("1 + x^2*y + y^3"), spec)
    assert v.failing == "(b) truncation on upper edge"


def test_pattern_newton_mismatch():
    with pytest.raises(ValueError):
        deformation_pattern_check(P("1 + x^2*y + y^4"), DeformationPatternSpec(2, 2, 1))


def test_truncation():
    assert truncation(P("1 + x^2*y + A*y + y^3 + x*y^2"), (2, 1), (0, 3)) == P("x^2*y + x*y^2 + y^3")


# ---------------------------------------------------------------- catalog

@pytest.mark.parametrize("pair_id", list(EDGE_CATALOG))
def test_catalog_verdicts(pair_id):
    v = edge_1tacnodal_check(pair_id)
    assert v.passed, [(c.name, c.detail) for c in v.checks if not c.passed]
    assert v.verdict == EDGE_CATALOG[pair_id].expected
    assert (REPLICATION_NOTE in v.notes) == EDGE_CATALOG[pair_id].replicated


def test_catalog_expectations():
    positive = {k for k, e in EDGE_CATALOG.items() if e.expected == "IsTacnodalEdge"}
    assert positive == {"III", "IV", "V"}


def test_residuals():
    assert "48*y^3" in edge_1tacnodal_check("2").witness["residual"]
    assert edge_1tacnodal_check("7").witness["branch B - C*eps = 0"] == "K = 48*y^3"
    assert "y^m2" in edge_1tacnodal_check("LEN1").witness["residual"]


def test_unknown_pair():
    with pytest.raises(KeyError):
        edge_1tacnodal_check("8")


@given(st.integers(1, 5), st.integers(1, 5))
def test_length_one(m1, m2):
    assert all(c.passed for c in length_one_check(m1, m2))


@pytest.mark.parametrize("eps", [1, -1])
def test_hat1_pattern_has_no_tacnode(eps):
    assert no_tacnode_oracle(1 + A * y + eps * x ** 2 * y + y ** 2, with_k=False)


@pytest.mark.parametrize("eps", [1, -1])
def test_hat2_pattern_has_no_tacnode(eps):
    assert no_tacnode_oracle(1 + A * y + eps * x ** 2 * y + B * y ** 2 + y ** 3)


def test_e_edge_pattern_has_no_tacnode():
    assert no_tacnode_oracle(1 + A * y + x ** 2 * y + B * y ** 2 + x * y ** 2 + y ** 3 / 4,
                             with_k=False)


def test_positive_pattern_has_a_tacnode():
    # control: the oracle does not answer {1} on a pattern that carries a tacnode
    D = sp.Symbol("D")
    C = sp.Symbol("C")
    phi = 1 + A * y + x ** 2 * y + B * y ** 2 + C * x * y ** 2 + D * y ** 3 + y ** 4
    assert not no_tacnode_oracle(phi)
