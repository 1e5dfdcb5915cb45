"""Normalized rational functions over the sparse polynomial ring.

A RatFn is a reduced fraction num/den with gcd(num, den) = 1 and the
denominator's graded-lex leading coefficient equal to 1, so equal fractions
have identical representations. Sums and products use gcd-limited
(Henrici-style) reduction to keep intermediate objects small.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import (
    ExactDivisionError,
    SparsePoly,
    divexact,
    poly_gcd,
)

_ONE = Fraction(1)


def _as_poly(value) -> SparsePoly:
    if isinstance(value, SparsePoly):
        return value
    if isinstance(value, (int, Fraction)):
        return SparsePoly.const(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")


class RatFn:
    """Reduced rational function num/den over Q[variables]."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, *, _reduced=False):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if num.is_zero():
            self.num = SparsePoly.zero()
            self.den = SparsePoly.const(1)
            return
        if not _reduced and not den.is_const():
            if num.is_const():
                pass  # gcd is trivially constant
            else:
                try:
                    num = divexact(num, den)
                    den = SparsePoly.const(1)
                except ExactDivisionError:
                    g = poly_gcd(num, den)
                    if not g.is_const():
                        num = divexact(num, g)
                        den = divexact(den, g)
        lc = den.leading_coefficient()
        if lc != 1:
            scale = _ONE / lc
            num = num.scale(scale)
            den = den.scale(scale)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls) -> "RatFn":
        return cls(0)

    @classmethod
    def one(cls) -> "RatFn":
        return cls(1)

    @classmethod
    def const(cls, value) -> "RatFn":
        return cls(SparsePoly.const(value))

    @classmethod
    def var(cls, name: str) -> "RatFn":
        return cls(SparsePoly.var(name))

    @classmethod
    def coerce(cls, value) -> "RatFn":
        if isinstance(value, RatFn):
            return value
        return cls(_as_poly(value))

    # -- structure -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        if self.num.is_zero():
            return Fraction(0)
        return self.num.const_value() / self.den.const_value()

    @property
    def variables(self):
        return tuple(sorted(set(self.num.variables) | set(self.den.variables)))

    def depends_on(self, name: str) -> bool:
        return name in self.num.variables or name in self.den.variables

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b == d:
            return RatFn(a + c, b)
        if b.is_const() or d.is_const():
            return RatFn(a * d + c * b, b * d)
        g = poly_gcd(b, d)
        if g.is_const():
            # inputs reduced and denominators coprime: result already reduced
            return RatFn(a * d + c * b, b * d, _reduced=True)
        b1 = divexact(b, g)
        d1 = divexact(d, g)
        t = a * d1 + c * b1
        h = poly_gcd(t, g)
        if h.is_const():
            return RatFn(t, b * d1, _reduced=True)
        return RatFn(divexact(t, h), divexact(b, h) * d1, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        out = RatFn.__new__(RatFn)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        return self + (-RatFn.coerce(other))

    def __rsub__(self, other):
        return RatFn.coerce(other) + (-self)

    def __mul__(self, other):
        other = RatFn.coerce(other)
        if self.is_zero() or other.is_zero():
            return RatFn.zero()
        a, b = self.num, self.den
        c, d = other.num, other.den
        if b.is_const() and d.is_const():
            return RatFn(a * c, b * d, _reduced=True)
        g1 = poly_gcd(a, d) if not (a.is_const() or d.is_const()) else SparsePoly.const(1)
        g2 = poly_gcd(c, b) if not (c.is_const() or b.is_const()) else SparsePoly.const(1)
        if not g1.is_const():
            a = divexact(a, g1)
            d = divexact(d, g1)
        if not g2.is_const():
            c = divexact(c, g2)
            b = divexact(b, g2)
        return RatFn(a * c, b * d, _reduced=True)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFn":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        return RatFn(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        return self * RatFn.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise ValueError("exponent must be an integer")
        if k < 0:
            return self.reciprocal() ** (-k)
        if k == 0:
            return RatFn.one()
        return RatFn(self.num ** k, self.den ** k, _reduced=True)

    def substitute(self, mapping) -> "RatFn":
        poly_map = {k: (v.num if isinstance(v, RatFn) and v.den.is_const() and
                        v.den.const_value() == 1 else v)
                    for k, v in mapping.items()}
        if any(isinstance(v, RatFn) for v in poly_map.values()):
            # general case: evaluate through fraction arithmetic
            num = _substitute_ratfn(self.num, mapping)
            den = _substitute_ratfn(self.den, mapping)
            return num / den
        return RatFn(self.num.substitute(poly_map), self.den.substitute(poly_map))

    # -- comparison / display -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, SparsePoly)):
            other = RatFn.coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        num = str(self.num)
        den = str(self.den)
        if len(self.num.terms) > 1 or self.num.leading_coefficient() < 0:
            num = f"({num})"
        if len(self.den.terms) > 1 or "*" in den or "^" in den or "/" in den:
            den = f"({den})"
        return f"{num}/{den}"

    __repr__ = __str__


def ratfn_normalize(num, den) -> RatFn:
    """Canonical reduced fraction num/den (content and polynomial gcd removed,
    denominator's leading coefficient 1). Equal fractions produce identical
    representations; a zero denominator raises ZeroDivisionError."""
    return RatFn(num, den)


def _substitute_ratfn(poly: SparsePoly, mapping) -> RatFn:
    result = RatFn.zero()
    for expo, coeff in poly.terms.items():
        term = RatFn.const(coeff)
        for name, e in zip(poly.variables, expo):
            if not e:
                continue
            base = mapping.get(name)
            base = RatFn.var(name) if base is None else RatFn.coerce(base)
            term = term * base ** e
        result = result + term
    return result
