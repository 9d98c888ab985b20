"""Gaussian rationals and helpers for mixing them with :class:`fractions.Fraction`.

Coefficients are kept as plain ``Fraction`` whenever the imaginary part is
zero, so rational computations never pay for the complex wrapper.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Union


class Gauss:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: Fraction | int, im: Fraction | int = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return norm(Gauss(self.re + o.re, self.im + o.im))

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return norm(Gauss(self.re - o.re, self.im - o.im))

    def __rsub__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return norm(Gauss(o.re - self.re, o.im - self.im))

    def __mul__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return norm(Gauss(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return o * self.reciprocal()

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return self.reciprocal() ** (-n)
        result: Scalar = Fraction(1)
        base: Scalar = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal(self):
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return norm(Gauss(self.re / d, -self.im / d))

    def conjugate(self):
        return norm(Gauss(self.re, -self.im))

    def __eq__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"Gauss({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, Gauss]


def _lift(x) -> Gauss | None:
    if isinstance(x, Gauss):
        return x
    if isinstance(x, (int, Fraction)):
        return Gauss(x, 0)
    return None


def norm(x) -> Scalar:
    """Canonical scalar: ``Fraction`` when real, ``Gauss`` otherwise."""
    if isinstance(x, Gauss):
        return x.re if x.im == 0 else x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def is_real(x: Scalar) -> bool:
    return not isinstance(x, Gauss)


def conj(x: Scalar) -> Scalar:
    return x.conjugate() if isinstance(x, Gauss) else x


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    x = norm(x)
    if isinstance(x, Fraction):
        return _fmt_q(x)
    re_part = _fmt_q(x.re)
    sign = "-" if x.im < 0 else "+"
    return f"({re_part}{sign}{_fmt_q(abs(x.im))}i)"


_SCALAR_RE = re.compile(
    r"^\(?\s*([+-]?\d+(?:/\d+)?)?\s*(?:([+-])\s*(\d+(?:/\d+)?)?i)?\s*\)?$"
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"3/4"``, ``"-2"``, ``"(-41/256+19/128i)"`` or ``"2i"``."""
    s = text.strip()
    if s.endswith("i") and "(" not in s and not any(c in s[1:] for c in "+-"):
        body = s[:-1] or "1"
        if body in ("+", "-"):
            body += "1"
        return norm(Gauss(0, Fraction(body)))
    m = _SCALAR_RE.match(s)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise ValueError(f"malformed exact scalar {text!r}")
    re_part = Fraction(m.group(1)) if m.group(1) else Fraction(0)
    im_part = Fraction(0)
    if m.group(2):
        im_part = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        if m.group(2) == "-":
            im_part = -im_part
    return norm(Gauss(re_part, im_part))
