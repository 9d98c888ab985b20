"""Triangular rewrite rules, quotient-ring reduction and univariate gcd."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .poly import ExactPoly, parse_poly
from .scalars import Scalar, norm


class ZeroDivisorError(ArithmeticError):
    """Raised when inversion hits a non-unit of a quotient ring."""

    def __init__(self, element: ExactPoly, modulus: ExactPoly):
        self.element = element
        self.modulus = modulus
        super().__init__(f"element {element} is a zero divisor modulo {modulus}")


@dataclass(frozen=True)
class Rule:
    lead: tuple[tuple[str, int], ...]
    replacement: ExactPoly

    def lead_dict(self) -> dict[str, int]:
        return dict(self.lead)

    def __str__(self):
        lm = "*".join(v if a == 1 else f"{v}^{a}" for v, a in self.lead)
        return f"{lm} -> {self.replacement}"


def _lex_key(mono: Mapping[str, int], order: Sequence[str]) -> tuple[int, ...]:
    return tuple(mono.get(v, 0) for v in order)


@dataclass(frozen=True)
class TriangularRelations:
    """Ordered rewrite rules ``leading monomial -> replacement``.

    ``order`` is a lex variable order (largest first). Every monomial of a
    replacement must be lex-smaller than its leading monomial, which makes
    reduction terminate.
    """

    rules: tuple[Rule, ...]
    order: tuple[str, ...]

    def __post_init__(self):
        for r in self.rules:
            lead = r.lead_dict()
            for v in list(lead) + list(r.replacement.used_vars()):
                if v not in self.order:
                    raise ValueError(f"variable {v} of rule {r} missing from order {self.order}")
            lk = _lex_key(lead, self.order)
            for e in r.replacement.terms:
                mono = dict(zip(r.replacement.vars, e))
                if _lex_key(mono, self.order) >= lk:
                    raise ValueError(f"rule {r} is not decreasing in lex order {self.order}; "
                                     "reduction would not terminate")

    @classmethod
    def from_strings(cls, rules: Iterable[tuple[str, str]], order: Iterable[str]) -> "TriangularRelations":
        built = []
        for lhs, rhs in rules:
            lm = parse_poly(lhs)
            if len(lm.terms) != 1 or lm.leading_coefficient() != 1:
                raise ValueError(f"left side {lhs!r} must be a monic monomial")
            (e,) = lm.terms
            lead = tuple((v, a) for v, a in zip(lm.vars, e) if a)
            built.append(Rule(lead, parse_poly(rhs)))
        return cls(tuple(built), tuple(order))

    @classmethod
    def univariate(cls, modulus: ExactPoly, var: str) -> "TriangularRelations":
        """Relation ``m(var) = 0`` written as ``var^n -> var^n - m/lc``."""
        m = modulus.monic()
        n = m.degree(var)
        if n < 1 or set(m.used_vars()) - {var}:
            raise ValueError(f"{modulus} is not a univariate polynomial of positive degree in {var}")
        lead = ExactPoly.var(var) ** n
        return cls((Rule(((var, n),), lead - m),), (var,))

    def modulus(self) -> ExactPoly:
        """For a single univariate rule, the monic defining polynomial."""
        if len(self.rules) != 1 or len(self.rules[0].lead) != 1:
            raise ValueError("modulus() needs exactly one univariate rule")
        (v, n), = self.rules[0].lead
        return ExactPoly.var(v) ** n - self.rules[0].replacement

    def generator(self) -> str:
        return self.rules[0].lead[0][0]

    def __str__(self):
        return "{" + ", ".join(str(r) for r in self.rules) + "}"

    def reduce(self, f: ExactPoly) -> ExactPoly:
        return reduce_mod(f, self)

    def mul(self, a: ExactPoly, b: ExactPoly) -> ExactPoly:
        return reduce_mod(a * b, self)


def reduce_mod(f: ExactPoly, R: TriangularRelations | None) -> ExactPoly:
    """Normal form of ``f`` modulo the rewrite rules (Q-linear, idempotent)."""
    if R is None or not R.rules or f.is_zero():
        return f
    names = tuple(f.vars) + tuple(v for v in R.order if v not in f.vars)
    for r in R.rules:
        names += tuple(v for v in r.replacement.vars if v not in names)
    f = f.with_vars(names)
    leads = []
    for r in R.rules:
        idx = [(names.index(v), a) for v, a in r.lead]
        rep = r.replacement.with_vars(names)
        leads.append((idx, list(rep.terms.items())))
    out: dict = {}
    stack = list(f.terms.items())
    while stack:
        e, c = stack.pop()
        for idx, rep in leads:
            if all(e[i] >= a for i, a in idx):
                base = list(e)
                for i, a in idx:
                    base[i] -= a
                for re_, rc in rep:
                    stack.append((tuple(x + y for x, y in zip(base, re_)), c * rc))
                break
        else:
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return ExactPoly(names, out)


# ---------------------------------------------------------------- univariate tools


def _udivmod(a: ExactPoly, b: ExactPoly, var: str, inv, red) -> tuple[ExactPoly, ExactPoly]:
    """Division with remainder in ``var``; ``inv`` inverts leading coefficients."""
    cb = b.coeffs_in(var)
    db = max(cb)
    lc_inv = inv(cb[db])
    q = ExactPoly(a.vars)
    r = a
    x = ExactPoly.var(var)
    while not r.is_zero() and r.degree(var) >= db:
        cr = r.coeffs_in(var)
        dr = max(cr)
        t = red(cr[dr] * lc_inv) * x ** (dr - db)
        q = q + t
        r = red(r - t * b)
    return q, r


def inverse_mod(g: ExactPoly, R: TriangularRelations) -> ExactPoly:
    """Inverse of ``g`` in Q[t]/(m) via the extended Euclidean algorithm."""
    m = R.modulus()
    t = R.generator()
    g = reduce_mod(g, R)
    if set(g.used_vars()) - {t}:
        raise ValueError(f"{g} is not an element of Q[{t}]/({m})")
    if g.is_zero():
        raise ZeroDivisorError(g, m)

    def field_inv(c: ExactPoly) -> ExactPoly:
        return ExactPoly.const(1 / _scalar(c.constant_value()))

    r0, r1 = m, g
    s0, s1 = ExactPoly.const(0), ExactPoly.const(1)
    while not r1.is_zero():
        q, r = _udivmod(r0, r1, t, field_inv, lambda p: p)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree(t) != 0:
        raise ZeroDivisorError(g, m)
    return reduce_mod(s0 / r0.constant_value(), R)


def _scalar(c: Scalar):
    c = norm(c)
    if not c:
        raise ZeroDivisionError("inverting zero")
    return c


def poly_gcd(u: ExactPoly, v: ExactPoly, R: TriangularRelations | None = None,
             var: str | None = None) -> ExactPoly:
    """Monic gcd of univariate polynomials by the Euclidean algorithm.

    Coefficients live in Q, Q(i), or Q[s]/(m(s)) when ``R`` holds a single
    univariate rule in a coefficient variable ``s``. Inverting a zero divisor
    raises :class:`ZeroDivisorError`.
    """
    coeff_vars = set(R.order) if R is not None else set()
    free = (set(u.used_vars()) | set(v.used_vars())) - coeff_vars
    if var is None:
        if len(free) > 1:
            raise ValueError(f"not univariate: variables {sorted(free)}")
        var = next(iter(free), "x")
    elif free - {var}:
        raise ValueError(f"not univariate in {var}: {sorted(free)}")

    if R is None:
        def inv(c: ExactPoly) -> ExactPoly:
            return ExactPoly.const(1 / _scalar(c.constant_value()))
    else:
        def inv(c: ExactPoly) -> ExactPoly:
            return inverse_mod(c, R)

    def red(p: ExactPoly) -> ExactPoly:
        return reduce_mod(p, R)

    a, b = red(u), red(v)
    while not b.is_zero():
        _, r = _udivmod(a, b, var, inv, red)
        a, b = b, r
    if a.is_zero():
        return a
    lc = a.coeffs_in(var)[max(a.coeffs_in(var))]
    return red(a * inv(lc))


def norm_poly(p: ExactPoly, R: TriangularRelations, var: str) -> ExactPoly:
    """Norm of ``p`` in K[var] down to Q[var], K = Q[s]/(m): Res_s(p, m)."""
    from sympy import Poly, resultant, symbols  # noqa: PLC0415

    s = R.generator()
    m = R.modulus()
    S, V = symbols(f"{s} {var}")
    def to_sym(q: ExactPoly):
        expr = 0
        for e, c in q.terms.items():
            term = _to_sympy_scalar(c)
            for name, a in zip(q.vars, e):
                if a:
                    term *= {s: S, var: V}[name] ** a
            expr += term
        return expr
    res = Poly(resultant(to_sym(p), to_sym(m), S), V)
    out = ExactPoly((var,), {(k[0],): _from_sympy_scalar(c) for k, c in res.terms()})
    return out.monic()


def _to_sympy_scalar(c):
    from sympy import I, Rational  # noqa: PLC0415
    c = norm(c)
    if isinstance(c, Fraction):
        return Rational(c.numerator, c.denominator)
    return Rational(c.re.numerator, c.re.denominator) + I * Rational(c.im.numerator, c.im.denominator)


def _from_sympy_scalar(c):
    from sympy import im, re  # noqa: PLC0415
    from .scalars import Gauss  # noqa: PLC0415
    r, i = re(c), im(c)
    return norm(Gauss(Fraction(int(r.p), int(r.q)), Fraction(int(i.p), int(i.q))))
