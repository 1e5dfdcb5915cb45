"""Characteristic-class arithmetic.

``ChernPoly`` is a polynomial in abstract classes c_1..c_r with rational
coefficients and weighted-degree bookkeeping (class c_i has weight i; an
integrand on an n-fold must be weighted-homogeneous of weight n).

``ClassSeries`` is a truncated formal series in the hyperplane class used to
divide total Chern classes, which yields the classes of virtual bundles such
as "tangent minus dual twisting line"; their top intersection numbers on
projective space are the left-hand sides the residue sums are checked
against. Equivariant Chern classes at a fixed point are the elementary
symmetric functions of the local endomorphism (normalized weights; the
2*pi*i unit is tracked separately as a formal exponent by the localization
engine).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .exact import RatFn, elementary_symmetric
from .expr import class_context, evaluate, parse_expr, RatFnDomain
from .model import FixedPoint


class DegenerateZeroError(ValueError):
    """A fixed point with singular linearization reached an exact formula."""


class ChernPoly:
    """Polynomial in classes c_1..c_r; exponent keys have length r."""

    __slots__ = ("nclasses", "weight", "terms", "inhomogeneous")

    def __init__(self, nclasses: int, terms, weight: Optional[int] = None,
                 inhomogeneous: bool = False):
        self.nclasses = nclasses
        self.weight = nclasses if weight is None else weight
        self.inhomogeneous = inhomogeneous
        clean = {}
        for expo, coeff in dict(terms).items():
            expo = tuple(expo)
            if len(expo) != nclasses:
                raise ValueError(f"exponent vector {expo} has length != {nclasses}")
            coeff = Fraction(coeff)
            if coeff:
                clean[expo] = coeff
        self.terms = clean
        if not inhomogeneous and not self.is_weighted_homogeneous(self.weight):
            raise ValueError(
                f"not weighted-homogeneous of weight {self.weight}: {self}")

    @classmethod
    def monomial(cls, nclasses: int, exponents, coeff=1, weight: Optional[int] = None):
        return cls(nclasses, {tuple(exponents): Fraction(coeff)}, weight=weight)

    @classmethod
    def single_class(cls, nclasses: int, index: int, power: int = 1,
                     weight: Optional[int] = None):
        expo = [0] * nclasses
        expo[index - 1] = power
        return cls(nclasses, {tuple(expo): Fraction(1)}, weight=weight)

    def term_weight(self, expo) -> int:
        return sum((i + 1) * m for i, m in enumerate(expo))

    def is_weighted_homogeneous(self, weight: int) -> bool:
        return all(self.term_weight(e) == weight for e in self.terms)

    def evaluate(self, values: Sequence) -> RatFn:
        if len(values) < self.nclasses:
            raise ValueError(f"need {self.nclasses} class values, got {len(values)}")
        values = [RatFn.coerce(v) for v in values]
        acc = RatFn.zero()
        for expo, coeff in self.terms.items():
            term = RatFn.const(coeff)
            for v, m in zip(values, expo):
                if m:
                    term = term * v ** m
            acc = acc + term
        return acc

    def __eq__(self, other):
        if not isinstance(other, ChernPoly):
            return NotImplemented
        return self.nclasses == other.nclasses and self.terms == other.terms

    def __hash__(self):
        return hash((self.nclasses, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, key=lambda e: (self.term_weight(e), e), reverse=True):
            coeff = self.terms[expo]
            mono = "*".join(
                f"c{i + 1}" if m == 1 else f"c{i + 1}^{m}"
                for i, m in enumerate(expo) if m
            )
            if not mono:
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{abs(coeff)}*{mono}"
            parts.append(("-" if coeff < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = __str__


def check_weighted_degree(phi: ChernPoly) -> bool:
    """True iff every term has weighted degree equal to phi.weight."""
    return phi.is_weighted_homogeneous(phi.weight)


def chern_poly_from_expr(text: str, nclasses: int, weight: Optional[int] = None,
                         prefix: str = "c", inhomogeneous: bool = False) -> ChernPoly:
    """Parse e.g. "c1^2 - 2*c2" into a ChernPoly over nclasses classes."""
    ast = parse_expr(text, class_context(nclasses, prefix))
    value = evaluate(ast, RatFnDomain())
    if not value.den.is_const():
        raise ValueError(f"not a polynomial in the classes: {text!r}")
    den = value.den.const_value()
    poly = value.num
    names = [f"{prefix}{k}" for k in range(1, nclasses + 1)]
    terms = {}
    for expo, coeff in poly.terms.items():
        key = [0] * nclasses
        for var, e in zip(poly.variables, expo):
            if e:
                key[names.index(var)] = e
        terms[tuple(key)] = coeff / den
    return ChernPoly(nclasses, terms, weight=weight, inhomogeneous=inhomogeneous)


# ---------------------------------------------------------------------------
# Truncated series in the hyperplane class
# ---------------------------------------------------------------------------

class ClassSeries:
    """Formal series sum_k a_k H^k truncated at H^order, rational coefficients."""

    __slots__ = ("order", "coefficients")

    def __init__(self, order: int, coefficients: Sequence):
        coeffs = [Fraction(c) for c in coefficients[:order + 1]]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.order = order
        self.coefficients = coeffs

    @classmethod
    def binomial_total_class(cls, order: int, power: int) -> "ClassSeries":
        """(1 + H)^power truncated: the total tangent class of projective space
        is the case power = order + 1."""
        return cls(order, [Fraction(comb(power, k)) for k in range(order + 1)])

    @classmethod
    def line_class(cls, order: int, c1) -> "ClassSeries":
        """1 + c1*H truncated (total class of a line bundle)."""
        coeffs = [Fraction(1), Fraction(c1)] + [Fraction(0)] * max(0, order - 1)
        return cls(order, coeffs)

    def __mul__(self, other: "ClassSeries") -> "ClassSeries":
        if self.order != other.order:
            raise ValueError("truncation orders differ")
        out = [Fraction(0)] * (self.order + 1)
        for i, a in enumerate(self.coefficients):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coefficients[j]
                if b:
                    out[i + j] += a * b
        return ClassSeries(self.order, out)

    def inverse(self) -> "ClassSeries":
        if self.coefficients[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / self.coefficients[0]
        out = [inv0] + [Fraction(0)] * self.order
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, k + 1):
                acc += self.coefficients[i] * out[k - i]
            out[k] = -inv0 * acc
        return ClassSeries(self.order, out)

    def __truediv__(self, other: "ClassSeries") -> "ClassSeries":
        return self * other.inverse()

    def __eq__(self, other):
        if not isinstance(other, ClassSeries):
            return NotImplemented
        return self.order == other.order and self.coefficients == other.coefficients

    def __str__(self):
        return " + ".join(f"{c}*H^{k}" if k else str(c)
                          for k, c in enumerate(self.coefficients) if c) or "0"

    __repr__ = __str__


def virtual_classes_pn(n: int, d: int):
    """Classes gamma_1..gamma_n of (tangent of P^n) minus (dual of O(d)):
    the truncated quotient (1+H)^{n+1} / (1 - dH), read off coefficientwise."""
    tangent = ClassSeries.binomial_total_class(n, n + 1)
    dual_line = ClassSeries.line_class(n, -d)
    quotient = tangent / dual_line
    return quotient.coefficients[1:]


def virtual_chern_numbers_Pn(n: int, d: int, phi: ChernPoly) -> Fraction:
    """Exact value of the top intersection of phi in the virtual classes."""
    if phi.nclasses != n:
        raise ValueError(f"integrand must use classes c1..c{n}")
    if not phi.is_weighted_homogeneous(n):
        raise ValueError(f"integrand is not weighted-homogeneous of weight {n}: {phi}")
    gammas = virtual_classes_pn(n, d)
    total = Fraction(0)
    for expo, coeff in phi.terms.items():
        prod = coeff
        for g, m in zip(gammas, expo):
            prod *= g ** m
        total += prod
    return total


def chern_numbers_Pn(n: int, phi: ChernPoly) -> Fraction:
    """Classical cohomology-ring value of the Chern number of projective
    n-space: phi evaluated on the binomial classes of (1+H)^{n+1}."""
    if phi.nclasses != n:
        raise ValueError(f"integrand must use classes c1..c{n}")
    if not phi.is_weighted_homogeneous(n):
        raise ValueError(f"integrand is not weighted-homogeneous of weight {n}: {phi}")
    total = Fraction(0)
    for expo, coeff in phi.terms.items():
        prod = coeff
        for i, m in enumerate(expo):
            prod *= Fraction(comb(n + 1, i + 1)) ** m
        total += prod
    return total


def equivariant_chern_at_point(point: FixedPoint):
    """(e_1, ..., e_n) of the tangent linearization at a fixed point; the top
    one equals the determinant. Degenerate points are rejected."""
    es = elementary_symmetric(point.tangent)
    if es and es[-1].is_zero():
        raise DegenerateZeroError(
            f"point {point.name!r} has a degenerate linearization")
    return es
