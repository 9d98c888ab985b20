"""Step-by-step elimination with recorded intermediate systems.

A system is a labelled set of polynomial equations ``g = 0``. Steps solve a
variable that occurs linearly, install a rewrite rule from an equation, or
substitute a value. Denominators are cleared and monomial factors in
variables assumed nonzero are dropped; every such assumption is recorded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .poly import ExactPoly, parse_poly
from .relations import Rule, TriangularRelations, reduce_mod


class EliminationError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Solved:
    var: str
    numerator: ExactPoly
    denominator: ExactPoly

    def __str__(self):
        if self.denominator.is_constant():
            return f"{self.var} = {self.numerator / self.denominator.constant_value()}"
        return f"{self.var} = ({self.numerator}) / ({self.denominator})"


@dataclass(frozen=True)
class Step:
    action: str
    system: dict[str, ExactPoly]
    assumptions: tuple[str, ...] = ()
    solved: Solved | None = None

    def to_json(self) -> dict:
        out = {"action": self.action,
               "system": {k: str(v) for k, v in self.system.items()},
               "assumptions": list(self.assumptions)}
        if self.solved is not None:
            out["solved"] = str(self.solved)
        return out


@dataclass(frozen=True)
class RelationCheck:
    step: int
    label: str
    expected: str
    computed: str
    status: str  # "exact", "modulo", or "mismatch"

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"


@dataclass
class Eliminator:
    system: dict[str, ExactPoly]
    nonzero: tuple[str, ...] = ("x", "y")
    steps: list[Step] = field(default_factory=list)
    solved: list[Solved] = field(default_factory=list)
    rules: list[Rule] = field(default_factory=list)
    order: tuple[str, ...] = ()

    def __post_init__(self):
        self.system = {k: self._clean(v) for k, v in self.system.items()}
        self.steps.append(Step("initial system", dict(self.system)))

    # -------------------------------------------------------------- helpers
    def _clean(self, g: ExactPoly) -> ExactPoly:
        g = g.strip_monomial(self.nonzero)
        return g

    def _relations(self) -> TriangularRelations | None:
        if not self.rules:
            return None
        return TriangularRelations(tuple(self.rules), self.order)

    def _record(self, action, renames: Mapping[str, str] | None, assumptions=(), solved=None):
        if renames:
            self.system = {renames.get(k, k): v for k, v in self.system.items()}
        self.steps.append(Step(action, dict(self.system), tuple(assumptions), solved))

    # -------------------------------------------------------------- steps
    def solve(self, var: str, label: str, renames: Mapping[str, str] | None = None) -> Solved:
        """Solve ``var`` from equation ``label`` (linear in ``var``) and substitute."""
        eq = self.system.pop(label)
        cs = eq.coeffs_in(var)
        if max(cs, default=0) != 1:
            raise EliminationError(f"{var} does not occur linearly in {label}: {eq}")
        a, b = cs[1], cs.get(0, ExactPoly(eq.vars))
        if a.is_zero():
            raise EliminationError(f"coefficient of {var} in {label} vanishes identically")
        # var = -b / a; a is expected to be a monomial times a constant
        assumptions = [f"{a} != 0"]
        sol = Solved(var, -b, a)
        for k, g in list(self.system.items()):
            gc = g.coeffs_in(var)
            d = max(gc, default=0)
            if d == 0:
                continue
            acc = ExactPoly(g.vars)
            for p, c in gc.items():
                acc = acc + c.subs({var: 0}) * (-b) ** p * a ** (d - p)
            self.system[k] = self._clean(reduce_mod(acc, self._relations()))
        self.solved.append(sol)
        self._record(f"solve {var} from {label}", renames, assumptions, sol)
        return sol

    def relation(self, label: str, lead: str, order: Iterable[str],
                 renames: Mapping[str, str] | None = None, keep: bool = True) -> Rule:
        """Use equation ``label`` as the rewrite rule ``lead -> ...`` and reduce the rest.

        With ``keep=False`` the rule is applied once and then forgotten, so
        later steps do not rewrite ``label`` itself back to zero.
        """
        eq = self.system[label]
        lm = parse_poly(lead)
        (e,) = lm.terms
        mono = {v: a for v, a in zip(lm.vars, e) if a}
        c = eq.coefficient(mono)
        if not c:
            raise EliminationError(f"{lead} does not occur in {label}")
        rest = eq - lm.with_vars(eq.vars) * c if set(lm.vars) <= set(eq.vars) else eq - lm * c
        rule = Rule(tuple(mono.items()), (-rest) / c)
        order = tuple(order)
        R = TriangularRelations(tuple(self.rules) + (rule,), order)  # validates termination
        if keep:
            self.order = order
            self.rules.append(rule)
        for k, g in list(self.system.items()):
            if k != label:
                self.system[k] = self._clean(reduce_mod(g, R))
        self._record(f"rewrite {rule} (from {label})", renames)
        return rule

    def substitute(self, values: Mapping[str, object], reason: str,
                   renames: Mapping[str, str] | None = None, drop: Iterable[str] = ()):
        for k in drop:
            self.system.pop(k)
        for k, g in list(self.system.items()):
            self.system[k] = self._clean(reduce_mod(g.subs(values), self._relations()))
        self.solved.extend(Solved(v, ExactPoly.const(0) + val if not isinstance(val, ExactPoly) else val,
                                  ExactPoly.const(1)) for v, val in values.items())
        self._record(f"substitute {', '.join(f'{k}={v}' for k, v in values.items())} ({reason})",
                     renames, (reason,))

    def divide(self, label: str, factor: str, reason: str):
        """Divide equation ``label`` by a factor that is nonzero by ``reason``."""
        g = self.system[label]
        q, r = divide_exact(g, parse_poly(factor))
        if not r.is_zero():
            raise EliminationError(f"{factor} does not divide {label}: remainder {r}")
        self.system[label] = self._clean(q)
        self._record(f"divide {label} by {factor} ({reason})", None, (f"{factor} != 0: {reason}",))

    def back_substitute(self, values: Mapping[str, object],
                        R: TriangularRelations | None = None) -> dict[str, ExactPoly]:
        """Recover solved variables in reverse order, given values for the rest.

        Division is by the recorded denominators, inverted in ``R`` when given.
        """
        from .relations import inverse_mod  # noqa: PLC0415

        env: dict[str, ExactPoly] = {k: _as_poly(v) for k, v in values.items()}
        for sol in reversed(self.solved):
            if sol.var in env:
                continue
            num = reduce_mod(sol.numerator.subs(env), R)
            den = reduce_mod(sol.denominator.subs(env), R)
            if den.is_zero():
                raise EliminationError(f"denominator of {sol.var} vanishes")
            if den.is_constant():
                env[sol.var] = reduce_mod(num / den.constant_value(), R)
            else:
                if R is None:
                    raise EliminationError(f"cannot invert {den} without a modulus")
                env[sol.var] = reduce_mod(num * inverse_mod(den, R), R)
        return env

    def check_relation(self, step: int, label: str, expected: str,
                      modulo: Iterable[str] = ()) -> RelationCheck:
        """Compare a computed equation with a reference one up to unit factors.

        ``modulo`` lists equations of the same step usable as rewrite rules
        (``"label:lead"``) when the reference was simplified with them.
        """
        got = self.steps[step].system[label]
        want = parse_poly(expected)
        status = "exact" if same_up_to_unit(got, want, self.nonzero) else "mismatch"
        if status == "mismatch" and modulo:
            rules = []
            order: list[str] = []
            for spec in modulo:
                lab, lead = spec.split(":")
                eq = self.steps[step].system[lab]
                lm = parse_poly(lead)
                (e,) = lm.terms
                mono = {v: a for v, a in zip(lm.vars, e) if a}
                c = eq.coefficient(mono)
                rest = eq - lm * c
                rules.append(Rule(tuple(mono.items()), (-rest) / c))
                order += [v for v in ("x", "y") + tuple(sorted(eq.used_vars())) if v not in order]
            R = TriangularRelations(tuple(rules), tuple(order))
            if same_up_to_unit(reduce_mod(got, R), reduce_mod(want, R), self.nonzero):
                status = "modulo"
        return RelationCheck(step, label, expected, str(got), status)

    def transcript(self) -> list[dict]:
        return [s.to_json() for s in self.steps]


def _as_poly(v) -> ExactPoly:
    return v if isinstance(v, ExactPoly) else ExactPoly.const(v)


def same_up_to_unit(a: ExactPoly, b: ExactPoly, nonzero: Iterable[str] = ("x", "y")) -> bool:
    """Equal after dropping monomial factors in ``nonzero`` and scaling."""
    nz = tuple(nonzero)
    return a.canonical(nz) == b.canonical(nz)


def divide_exact(a: ExactPoly, b: ExactPoly) -> tuple[ExactPoly, ExactPoly]:
    """Multivariate division by ``b`` w.r.t. lex order on sorted variable names."""
    names = tuple(sorted(set(a.used_vars()) | set(b.used_vars())))
    a, b = a.with_vars(names), b.with_vars(names)
    lead_b = max(b.terms)
    lc_b = b.terms[lead_b]
    q = ExactPoly(names)
    r = ExactPoly(names)
    p = a
    while not p.is_zero():
        lt = max(p.terms)
        c = p.terms[lt]
        if all(x >= y for x, y in zip(lt, lead_b)):
            t = ExactPoly(names, {tuple(x - y for x, y in zip(lt, lead_b)): c / lc_b})
            q = q + t
            p = p - t * b
        else:
            mono = ExactPoly(names, {lt: c})
            r = r + mono
            p = p - mono
    return q, r
