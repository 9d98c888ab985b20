"""Sparse multivariate polynomials with exact coefficients.

An :class:`ExactPoly` is a mapping from exponent tuples to coefficients in
Q or Q(i), over an ordered tuple of variable names. Values are immutable.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .scalars import Gauss, Scalar, format_scalar, norm

Exps = tuple[int, ...]


class ExactPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exps, object] | None = None):
        self.vars: tuple[str, ...] = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"repeated variable in {self.vars}")
        clean: dict[Exps, Scalar] = {}
        n = len(self.vars)
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError("exponent length does not match variables")
            c = norm(c)
            if c:
                clean[tuple(e)] = clean.get(tuple(e), 0) + c
                if not clean[tuple(e)]:
                    del clean[tuple(e)]
        self.terms: dict[Exps, Scalar] = clean

    # ------------------------------------------------------------ builders
    @classmethod
    def const(cls, c, variables: Iterable[str] = ()) -> "ExactPoly":
        v = tuple(variables)
        return cls(v, {(0,) * len(v): c})

    @classmethod
    def var(cls, name: str) -> "ExactPoly":
        return cls((name,), {(1,): 1})

    @classmethod
    def symbols(cls, names: str) -> tuple["ExactPoly", ...]:
        return tuple(cls.var(n) for n in names.replace(",", " ").split())

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] | None = None) -> "ExactPoly":
        p = parse_poly(text)
        if variables is not None:
            p = p.with_vars(variables)
        return p

    # ------------------------------------------------------------ variables
    def with_vars(self, variables: Iterable[str]) -> "ExactPoly":
        """Re-express over ``variables`` (must contain every used variable)."""
        new = tuple(variables)
        if new == self.vars:
            return self
        idx = {v: k for k, v in enumerate(new)}
        used = self.used_vars()
        missing = [v for v in used if v not in idx]
        if missing:
            raise ValueError(f"variables {missing} not in {new}")
        pos = [(idx[v], k) for k, v in enumerate(self.vars) if v in idx]
        out: dict[Exps, Scalar] = {}
        for e, c in self.terms.items():
            ne = [0] * len(new)
            for target, src in pos:
                ne[target] = e[src]
            out[tuple(ne)] = c
        r = ExactPoly.__new__(ExactPoly)
        r.vars, r.terms = new, out
        return r

    def used_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for k, a in enumerate(e):
                if a:
                    used[k] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    def _aligned(self, other: "ExactPoly") -> tuple["ExactPoly", "ExactPoly"]:
        if self.vars == other.vars:
            return self, other
        merged = self.vars + tuple(v for v in other.vars if v not in self.vars)
        return self.with_vars(merged), other.with_vars(merged)

    # ------------------------------------------------------------ arithmetic
    @staticmethod
    def _coerce(x) -> "ExactPoly | None":
        if isinstance(x, ExactPoly):
            return x
        if isinstance(x, (int, Fraction, Gauss)):
            return ExactPoly.const(x)
        return None

    def _raw(self, variables, terms) -> "ExactPoly":
        r = ExactPoly.__new__(ExactPoly)
        r.vars, r.terms = variables, terms
        return r

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        out = dict(a.terms)
        for e, c in b.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = norm(s)
            else:
                out.pop(e, None)
        return self._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return self._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Gauss)):
            c0 = norm(other)
            if not c0:
                return self._raw(self.vars, {})
            return self._raw(self.vars, {e: norm(c * c0) for e, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        out: dict[Exps, Scalar] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return self._raw(a.vars, {e: norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Gauss)):
            c0 = norm(other)
            if not c0:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            inv = Fraction(1) / c0 if isinstance(c0, Fraction) else c0.reciprocal()
            return self * inv
        if isinstance(other, ExactPoly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = ExactPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._aligned(o)
        return a.terms == b.terms

    def __hash__(self):
        return hash(frozenset(self.with_vars(sorted(self.used_vars())).terms.items()))

    # ------------------------------------------------------------ queries
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return next(iter(self.terms.values()), Fraction(0))

    def is_real(self) -> bool:
        return all(not isinstance(c, Gauss) for c in self.terms.values())

    def _index(self, name: str) -> int | None:
        try:
            return self.vars.index(name)
        except ValueError:
            return None

    def degree(self, name: str | None = None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        k = self._index(name)
        if k is None:
            return 0
        return max(e[k] for e in self.terms)

    def coeffs_in(self, name: str) -> dict[int, "ExactPoly"]:
        """View as a univariate polynomial in ``name``: power -> coefficient."""
        k = self._index(name)
        if k is None:
            return {0: self} if self.terms else {}
        buckets: dict[int, dict[Exps, Scalar]] = {}
        for e, c in self.terms.items():
            rest = e[:k] + (0,) + e[k + 1:]
            buckets.setdefault(e[k], {})[rest] = c
        return {p: self._raw(self.vars, t) for p, t in sorted(buckets.items())}

    def coefficient(self, monomial: Mapping[str, int]) -> Scalar:
        e = tuple(monomial.get(v, 0) for v in self.vars)
        extra = [v for v, a in monomial.items() if a and v not in self.vars]
        if extra:
            return Fraction(0)
        return self.terms.get(e, Fraction(0))

    def exponents_in(self, names: Iterable[str]) -> dict[tuple[int, ...], "ExactPoly"]:
        """Split as sum over monomials in ``names`` with coefficients in the rest."""
        names = tuple(names)
        ks = [self._index(n) for n in names]
        out: dict[tuple[int, ...], dict[Exps, Scalar]] = {}
        for e, c in self.terms.items():
            key = tuple(e[k] if k is not None else 0 for k in ks)
            rest = list(e)
            for k in ks:
                if k is not None:
                    rest[k] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {key: self._raw(self.vars, t) for key, t in sorted(out.items())}

    # ------------------------------------------------------------ calculus
    def diff(self, name: str, k: int = 1) -> "ExactPoly":
        idx = self._index(name)
        if idx is None or k == 0:
            return self if k == 0 else self._raw(self.vars, {})
        out: dict[Exps, Scalar] = {}
        for e, c in self.terms.items():
            a = e[idx]
            if a < k:
                continue
            f = 1
            for t in range(k):
                f *= a - t
            ne = e[:idx] + (a - k,) + e[idx + 1:]
            out[ne] = norm(c * f)
        return self._raw(self.vars, out)

    def subs(self, mapping: Mapping[str, object]) -> "ExactPoly":
        """Substitute polynomials or scalars for variables."""
        if not mapping:
            return self
        targets = {k: self._coerce(v) for k, v in mapping.items() if k in self.vars}
        if any(v is None for v in targets.values()):
            raise TypeError("substitution values must be scalars or ExactPoly")
        if not targets:
            return self
        keep = tuple(v for v in self.vars if v not in targets)
        keep_idx = [self.vars.index(v) for v in keep]
        sub_idx = [(self.vars.index(v), p) for v, p in targets.items()]
        powers: dict[tuple[int, int], ExactPoly] = {}

        def pw(i: int, p: ExactPoly, a: int) -> ExactPoly:
            key = (i, a)
            if key not in powers:
                powers[key] = p ** a
            return powers[key]

        total = ExactPoly(keep)
        groups: dict[tuple[int, ...], dict[Exps, Scalar]] = {}
        for e, c in self.terms.items():
            skey = tuple(e[i] for i, _ in sub_idx)
            groups.setdefault(skey, {})[tuple(e[i] for i in keep_idx)] = c
        for skey, rest in groups.items():
            term = self._raw(keep, rest)
            for (i, p), a in zip(sub_idx, skey):
                if a:
                    term = term * pw(i, p, a)
            total = total + term
        return total

    def __call__(self, **values) -> "ExactPoly":
        return self.subs(values)

    # ------------------------------------------------------------ normal forms
    def monomial_content(self, names: Iterable[str]) -> dict[str, int]:
        """Largest monomial in ``names`` dividing every term."""
        out = {}
        for n in names:
            k = self._index(n)
            if k is None or not self.terms:
                continue
            m = min(e[k] for e in self.terms)
            if m:
                out[n] = m
        return out

    def divide_monomial(self, mono: Mapping[str, int]) -> "ExactPoly":
        shifts = [mono.get(v, 0) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = tuple(a - s for a, s in zip(e, shifts))
            if min(ne, default=0) < 0:
                raise ValueError("monomial does not divide polynomial")
            out[ne] = c
        return self._raw(self.vars, out)

    def strip_monomial(self, names: Iterable[str]) -> "ExactPoly":
        return self.divide_monomial(self.monomial_content(names))

    def sorted_terms(self) -> list[tuple[Exps, Scalar]]:
        """Terms in display order: total degree descending, then lex descending."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def leading_coefficient(self) -> Scalar:
        if not self.terms:
            return Fraction(0)
        return self.sorted_terms()[0][1]

    def monic(self) -> "ExactPoly":
        return self / self.leading_coefficient() if self.terms else self

    def canonical(self, nonzero: Iterable[str] = ()) -> "ExactPoly":
        """Drop monomial factors in ``nonzero`` and scale to leading coefficient 1."""
        return self.strip_monomial(nonzero).with_vars(sorted(self.used_vars())).monic()

    def conjugate(self) -> "ExactPoly":
        return self._raw(self.vars, {e: (c.conjugate() if isinstance(c, Gauss) else c)
                                     for e, c in self.terms.items()})

    # ------------------------------------------------------------ text
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if a == 1 else f"{v}^{a}" for v, a in zip(self.vars, e) if a)
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"ExactPoly({str(self)!r})"

    def to_json(self) -> str:
        return str(self)


Coeff = Union[int, Fraction, Gauss, ExactPoly]

# ---------------------------------------------------------------- parsing

_IMAG_NUM = re.compile(r"(\d+(?:/\d+)?)i(?![A-Za-z_0-9])")
_IMAG_UNIT = re.compile(r"(?<![A-Za-z_0-9])i(?![A-Za-z_0-9])")
_IMAG_NAME = "__imag__"


def parse_poly(text: str) -> ExactPoly:
    """Parse the text format ``c*x^a*y^b + ...``.

    Coefficients may be integers, rationals ``p/q`` or Gaussian literals such
    as ``(-41/256+19/128i)``. Division is allowed only by constants.
    """
    if not text or not text.strip():
        raise ValueError("empty polynomial text")
    src = _IMAG_NUM.sub(lambda m: f"(({m.group(1)})*{_IMAG_NAME})", text)
    src = _IMAG_UNIT.sub(_IMAG_NAME, src).replace("^", "**")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None
    return _eval_node(tree.body, text)


def _eval_node(node, text) -> ExactPoly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return ExactPoly.const(node.value)
    if isinstance(node, ast.Name):
        if node.id == _IMAG_NAME:
            return ExactPoly.const(Gauss(0, 1))
        return ExactPoly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError(f"exponent must be a non-negative integer in {text!r}")
            return left ** node.right.value
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise ValueError(f"division by non-constant or zero in {text!r}")
            return left / right.constant_value()
    raise ValueError(f"unsupported syntax in polynomial {text!r}")


def poly(text: str) -> ExactPoly:
    """Shorthand for :func:`parse_poly`."""
    return parse_poly(text)
