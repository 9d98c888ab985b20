"""Tropical 1-tacnodal detection and the rank gate."""

from __future__ import annotations

from dataclasses import dataclass, field

from .lattice import FEATURE_POLYTOPES, LatticePolytope, normal_form_key, polygon_stats
from .tropical import (DualSubdivision, SubdivisionCensus, TropicalPolynomial,
                       dual_subdivision, subdivision_census)

KINDS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "E")
SINGLE_KINDS = ("I", "II", "VI", "VII", "VIII", "IX")
# glued kinds: (first cell, second cell, shared lattice length); "T211" is any
# triangle with edge lengths 2, 1, 1 and no interior lattice point
GLUED_KINDS = {"III": ("III", "T211", 2), "IV": ("IV", "IV", 2),
               "V": ("V", "V", 4), "E": ("E", "T211", 2)}

_KEYS = {k: normal_form_key(P) for k, P in FEATURE_POLYTOPES.items()}


def _is(cell: LatticePolytope, what: str) -> bool:
    if what == "T211":
        st = polygon_stats(cell)
        return st.num_edges == 3 and st.edge_lengths == (2, 1, 1) and st.interior_count == 0
    return normal_form_key(cell) == _KEYS[what]


def is_unit_triangle(cell: LatticePolytope) -> bool:
    return len(cell) == 3 and cell.area2 == 1


@dataclass(frozen=True)
class TacnodalFeature:
    kind: str
    cells: tuple[int, ...]
    shared_edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "cells": list(self.cells),
                "shared_edges": [[list(a), list(b)] for a, b in self.shared_edges]}


def find_features(S: DualSubdivision) -> list[TacnodalFeature]:
    """Every occurrence of a feature polytope or glued pair, in kind order."""
    out: list[TacnodalFeature] = []
    for kind in KINDS:
        if kind in SINGLE_KINDS:
            out += [TacnodalFeature(kind, (k,)) for k, c in enumerate(S.cells) if _is(c, kind)]
            continue
        first, second, length = GLUED_KINDS[kind]
        for e in S.edges:
            if not e.interior or e.length != length:
                continue
            a, b = e.cells
            for p, q in ((a, b), (b, a)):
                if _is(S.cells[p], first) and _is(S.cells[q], second):
                    f = TacnodalFeature(kind, (p, q), ((e.a, e.b),))
                    if first == second and any(g.kind == kind and set(g.cells) == {p, q} for g in out):
                        continue
                    out.append(f)
    return out


def remainder_violations(S: DualSubdivision, feature: TacnodalFeature) -> list[int]:
    return [k for k, c in enumerate(S.cells) if k not in feature.cells and not is_unit_triangle(c)]


def detect_tacnodal_feature(S: DualSubdivision) -> TacnodalFeature | None:
    """First feature whose complement in S consists of unit triangles."""
    for f in find_features(S):
        if not remainder_violations(S, f):
            return f
    return None


def case_tag(census: SubdivisionCensus) -> str | None:
    if census.boundary_defect not in (0, 1):
        return None
    return {(True, 0): "A", (True, 1): "B", (False, 0): "C", (False, 1): "D"}[
        (census.is_tp, census.boundary_defect)]


@dataclass
class Classification:
    verdict: str  # "TropicalOneTacnodal" or "NotTacnodal"
    feature: TacnodalFeature | None
    reason: str | None
    census: SubdivisionCensus
    case: str | None
    alternates: list[TacnodalFeature] = field(default_factory=list)

    @property
    def is_tacnodal(self) -> bool:
        return self.verdict == "TropicalOneTacnodal"

    def label(self) -> str:
        if self.feature is not None:
            return f"TropicalOneTacnodal({self.feature.kind})"
        return f"NotTacnodal({self.reason})"

    def to_json(self) -> dict:
        return {"verdict": self.label(),
                "feature": self.feature.to_json() if self.feature else None,
                "alternates": [f.to_json() for f in self.alternates],
                "census": self.census.to_json(), "case": self.case}


def classify(S: DualSubdivision, newton: LatticePolytope | None = None) -> Classification:
    census = subdivision_census(S, newton)
    feats = find_features(S)
    chosen = next((f for f in feats if not remainder_violations(S, f)), None)
    tag = case_tag(census)
    if chosen is not None:
        alts = [f for f in feats if f is not chosen]
        return Classification("TropicalOneTacnodal", chosen, None, census, tag, alts)
    if not feats:
        reason = "no feature"
    else:
        f = feats[0]
        bad = remainder_violations(S, f)
        reason = f"feature {f.kind} present but cells {bad} outside it are not unit triangles"
    return Classification("NotTacnodal", None, reason, census, tag, feats)


# ---------------------------------------------------------------- rank gate

HYPOTHESIS_NOTE = ("the input is assumed to define an irreducible 1-tacnodal curve; "
                   "this cannot be checked from valuations alone")


@dataclass
class GateReport:
    lattice_points: int
    rank: int
    regime: str
    classification: Classification | None
    subdivision: DualSubdivision
    note: str = HYPOTHESIS_NOTE

    @property
    def in_range(self) -> bool:
        return self.lattice_points - 4 <= self.rank <= self.lattice_points - 1

    def to_json(self) -> dict:
        return {"lattice_points": self.lattice_points, "rank": self.rank,
                "bounds": [self.lattice_points - 4, self.lattice_points - 1],
                "in_range": self.in_range, "regime": self.regime,
                "classification": self.classification.to_json() if self.classification else None,
                "note": self.note}


def theorem_gate(F: TropicalPolynomial) -> GateReport:
    S = dual_subdivision(F)
    census = subdivision_census(S)
    n, rk = census.lattice_points, census.rk
    cls = classify(S)
    if rk == n - 4:
        regime = "rank = #lattice points - 4: tacnodal regime, classified"
    elif n - 3 <= rk <= n - 1:
        regime = "smooth, nodal or 1-cuspidal regime, out of 1-tacnodal scope"
    else:
        regime = "outside the gate hypothesis (rank below #lattice points - 4)"
    return GateReport(n, rk, regime, cls if rk == n - 4 else None, S)


# ---------------------------------------------------------------- census identities


@dataclass
class ConsistencyReport:
    case: str | None
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"case": self.case, "passed": self.passed, "checks": self.checks}


def census_consistency(S: DualSubdivision) -> ConsistencyReport:
    """Counting identities that hold when rank = #lattice points - 4, per case."""
    c = subdivision_census(S)
    tag = case_tag(c)
    checks: dict[str, bool] = {
        "boundary defect is 0 or 1": c.boundary_defect in (0, 1),
        "rank = #lattice points - 4": c.rk == c.lattice_points - 4,
    }
    npar4 = c.npar.get(4, 0)
    npar_all = sum(c.npar.values())
    excess = sum((m - 3) * n for m, n in c.n_ell.items())
    if tag in ("A", "B"):
        checks["d = 0"] = c.d == 0
        checks["#V(S) = #lattice points - 3 + N'_4"] = c.num_vertices == c.lattice_points - 3 + npar4
        checks["N'_4 range"] = 0 <= npar4 <= (3 if tag == "A" else 2)
    if tag == "B":
        long_edges = [e for e in S.edges if not e.interior and e.length == 2]
        checks["exactly one cell meets the boundary in a length-2 segment"] = (
            len(long_edges) == 1 and all(e.length <= 2 for e in S.edges if not e.interior))
    if tag in ("C", "D"):
        checks["sum (m-3) N_m <= 5 - sum N'_2m"] = excess <= 5 - npar_all
        checks["sum N'_2m <= 2"] = npar_all <= 2
    return ConsistencyReport(tag, checks)
