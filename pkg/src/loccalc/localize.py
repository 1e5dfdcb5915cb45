"""Exact localization sums over fixed-point data.

Every formula here evaluates a global characteristic number as a sum of
residues at the zeroes of a vector field. The residue denominator at a zero
is the determinant of the *bracket* linearization u -> [V, u], which is
``LINEARIZATION_SIGN`` times the stored chart Jacobian; equivalently the
denominator is ``LINEARIZATION_SIGN**n * det(tangent)``.

Sign calibration (fixed once, here): models store chart Jacobians with
entries ``w_i - w_j`` on projective space and the degree-one line weight
``w_j``; with ``LINEARIZATION_SIGN = -1`` this pair reproduces both
calibration targets: the top self-intersection of the degree-one line bundle
on projective n-space is +1 and the top tangent class counts the n+1 fixed
points. Sums whose numerators are built from the tangent data itself (Bott,
Baum-Bott, the zero identity) are invariant under this sign because their
integrands are weighted-homogeneous; only formulas that mix independent
bundle data with tangent denominators can see it, which is what the
deliberate-fault scenario in the verification suite exploits.

Unit bookkeeping: all formulas carry a prefactor (2*pi*i / t)^n while the
pointwise numerators carry the matching t^n / (2*pi*i)^n weight
normalization. The 2*pi*i unit is tracked as an integer exponent
(``tau_exponent``), the deformation parameter t as an actual polynomial
variable; the engine multiplies the t-power in, cancels the prefactor
through exact rational-function arithmetic, and reports the residual
exponents, which must both be zero for every implemented formula.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

from .chern import ChernPoly
from .exact import (
    ExactDivisionError,
    RatFn,
    SparsePoly,
    SquareMatrix,
    divexact,
    elementary_symmetric,
    rational_content,
)
from .model import FixedPoint, VarietyModel, validate

#: determinant convention for residue denominators: the linearization acting
#: on tangent vectors is the commutator with the field, i.e. minus the chart
#: Jacobian. Flipping this to +1 is the deliberate fault the verification
#: suite detects.
LINEARIZATION_SIGN = -1


class LocalizationError(ValueError):
    pass


@dataclass
class LocalizationResult:
    """Value of a localization sum with its per-point summands and the
    residual formal exponents of the 2*pi*i unit and of t."""

    value: RatFn
    per_point: list = field(default_factory=list)
    tau_exponent: int = 0
    t_exponent: int = 0

    def constant(self) -> Fraction:
        return self.value.as_fraction()


# ---------------------------------------------------------------------------
# Summation with factored denominators
# ---------------------------------------------------------------------------

def _canonical_factor(p: SparsePoly):
    """p = scalar * primitive with integer-coprime, positive-leading primitive."""
    c = rational_content(p)
    if p.leading_coefficient() < 0:
        c = -c
    return p.scale(Fraction(1) / c), c


class _FactoredSum:
    """Accumulates sum N_j / prod f^k with an explicit denominator multiset,
    so common linear factors never trigger polynomial gcd searches."""

    def __init__(self):
        self.started = False
        self.num = SparsePoly.zero()
        self.mult: Counter = Counter()

    def add(self, numerator: SparsePoly, factors: Counter):
        if not self.started:
            self.started = True
            self.num = numerator
            self.mult = Counter(factors)
            return
        union = Counter()
        for f in set(self.mult) | set(factors):
            union[f] = max(self.mult.get(f, 0), factors.get(f, 0))
        grow_self = SparsePoly.const(1)
        for f, m in union.items():
            need = m - self.mult.get(f, 0)
            if need:
                grow_self = grow_self * f ** need
        grow_in = SparsePoly.const(1)
        for f, m in union.items():
            need = m - factors.get(f, 0)
            if need:
                grow_in = grow_in * f ** need
        self.num = self.num * grow_self + numerator * grow_in
        self.mult = union

    def result(self) -> RatFn:
        if not self.started:
            return RatFn.zero()
        den = SparsePoly.const(1)
        for f, m in self.mult.items():
            if m:
                den = den * f ** m
        return RatFn(self.num, den)


def _factor_against(den: SparsePoly, candidates) -> Optional[tuple]:
    """Write den as constant * prod(candidate^k); None if a residue is left."""
    counts: Counter = Counter()
    residual = den
    for f in candidates:
        if f.is_const():
            continue
        while True:
            try:
                residual = divexact(residual, f)
            except ExactDivisionError:
                break
            counts[f] += 1
    if residual.is_const():
        return counts, residual.const_value()
    return None


def _sum_point_values(entries, factor_hints) -> RatFn:
    """Sum named RatFn summands; factor_hints maps names to candidate
    denominator factors (primitive polynomials) enabling gcd-free merging."""
    factored = []
    for name, value in entries:
        hints = factor_hints.get(name)
        decomposition = None
        if hints is not None:
            decomposition = _factor_against(value.den, hints)
        if decomposition is None:
            factored = None
            break
        counts, scalar = decomposition
        factored.append((value.num.scale(Fraction(1) / scalar), counts))
    if factored is not None:
        acc = _FactoredSum()
        for numerator, counts in factored:
            acc.add(numerator, counts)
        return acc.result()
    total = RatFn.zero()
    for _, value in entries:
        total = total + value
    return total


# ---------------------------------------------------------------------------
# Per-point data
# ---------------------------------------------------------------------------

def _require_valid(model: VarietyModel):
    report = validate(model)
    if not report.ok:
        raise LocalizationError(
            "degenerate zeroes: " + ", ".join(report.degenerate))


def _bracket_matrix(point: FixedPoint) -> SquareMatrix:
    sign = LINEARIZATION_SIGN
    if sign == 1:
        return point.tangent
    return point.tangent.scale(RatFn.const(sign))


def _denominator_data(matrix: SquareMatrix):
    """(det as RatFn, primitive factor hints) for a linearization matrix."""
    if matrix.is_triangular():
        entries = matrix.diagonal_entries()
        det_value = RatFn.one()
        hints = []
        for e in entries:
            det_value = det_value * e
            prim, _ = _canonical_factor(e.num)
            if not prim.is_const():
                hints.append(prim)
            prim_d, _ = _canonical_factor(e.den)
            if not prim_d.is_const():
                hints.append(prim_d)
        return det_value, hints
    from .exact import det as _det
    return _det(matrix), None


def _check_integrand(phi: ChernPoly, nclasses: int, weight: int, what: str):
    if phi.nclasses != nclasses:
        raise LocalizationError(
            f"{what} must be a polynomial in classes c1..c{nclasses}")
    if not phi.is_weighted_homogeneous(weight):
        raise LocalizationError(
            f"{what} must be weighted-homogeneous of weight {weight}")


def _assemble(model: VarietyModel, numerators) -> LocalizationResult:
    """Common pipeline: multiply the t^n weight normalization into the
    numerators, divide by the bracket determinants, cancel the (2 pi i / t)^n
    prefactor, and report residual unit exponents."""
    n = model.dim
    t_power = RatFn(SparsePoly.var("t", n))
    per_point = []
    entries = []
    hints = {}
    for point, numerator in numerators:
        det_value, point_hints = _denominator_data(_bracket_matrix(point))
        if det_value.is_zero():
            raise LocalizationError(f"degenerate zero {point.name!r}")
        summand = numerator / det_value
        per_point.append((point.name, summand))
        entries.append((point.name, summand))
        if point_hints is not None:
            hints[point.name] = point_hints
    raw = _sum_point_values(entries, hints) if entries else RatFn.zero()
    # realize the t^n carried by every weight-normalized numerator, then
    # cancel it against the t^{-n} of the prefactor
    with_t = raw * t_power
    value = with_t / t_power
    tau_exponent = n + (-n)  # prefactor (2 pi i)^n against the (2 pi i)^{-n}
    t_exponent = value.num.degree_in("t") - value.den.degree_in("t")
    return LocalizationResult(value=value, per_point=per_point,
                              tau_exponent=tau_exponent, t_exponent=t_exponent)


# ---------------------------------------------------------------------------
# The localization formulas
# ---------------------------------------------------------------------------

def bott_sum(model: VarietyModel, phi: ChernPoly) -> LocalizationResult:
    """Characteristic number of the tangent bundle as a residue sum: the
    integrand evaluated in the equivariant Chern classes of each zero,
    divided by the top class (the bracket determinant)."""
    if model.dim < 1:
        raise LocalizationError("model dimension must be positive")
    _require_valid(model)
    _check_integrand(phi, model.dim, model.dim, "integrand")
    numerators = []
    for point in model.points:
        es = elementary_symmetric(_bracket_matrix(point))
        numerators.append((point, phi.evaluate(es)))
    return _assemble(model, numerators)


def zero_sum_identity(model: VarietyModel) -> RatFn:
    """Sum of reciprocal bracket determinants; identically 0 for any model
    coming from a global holomorphic field."""
    if model.dim < 1:
        raise LocalizationError("model dimension must be positive")
    _require_valid(model)
    entries = []
    hints = {}
    for point in model.points:
        det_value, point_hints = _denominator_data(_bracket_matrix(point))
        if det_value.is_zero():
            raise LocalizationError(f"degenerate zero {point.name!r}")
        entries.append((point.name, det_value.reciprocal()))
        if point_hints is not None:
            hints[point.name] = point_hints
    if not entries:
        return RatFn.zero()
    return _sum_point_values(entries, hints)


def carrell_liebermann_sum(model: VarietyModel, p: ChernPoly) -> LocalizationResult:
    """Residue sum for a polynomial in the classes of an equivariant bundle:
    p evaluated in the symmetric functions of the bundle endomorphism at each
    zero, divided by the bracket determinant of the tangent linearization."""
    if model.dim < 1:
        raise LocalizationError("model dimension must be positive")
    _require_valid(model)
    rank = model.rank if model.rank else 1
    _check_integrand(p, rank, model.dim, "bundle integrand")
    numerators = []
    for point in model.points:
        if point.bundle_endo is not None:
            es = elementary_symmetric(point.bundle_endo)
        elif point.line_weight is not None:
            es = [point.line_weight]
        else:
            raise LocalizationError(
                f"point {point.name!r} carries no bundle endomorphism or line weight")
        numerators.append((point, p.evaluate(es)))
    return _assemble(model, numerators)


def localization_rhs(model: VarietyModel,
                     numerators: Mapping[str, RatFn]) -> LocalizationResult:
    """General residue sum with caller-supplied numerators.

    The numerators are the degree-zero parts of a closed cocycle at each
    zero, in the weight normalization in which the t^n / (2 pi i)^n factor
    they carry cancels the (2 pi i / t)^n prefactor exactly; the recorded
    exponents are the residue of that cancellation. Numerators may involve t
    as a first-class variable.
    """
    if model.dim < 1:
        raise LocalizationError("model dimension must be positive")
    _require_valid(model)
    pairs = []
    for point in model.points:
        if point.name not in numerators:
            raise LocalizationError(f"missing numerator for point {point.name!r}")
        pairs.append((point, RatFn.coerce(numerators[point.name])))
    n = model.dim
    per_point = []
    entries = []
    hints = {}
    for point, numerator in pairs:
        det_value, point_hints = _denominator_data(_bracket_matrix(point))
        if det_value.is_zero():
            raise LocalizationError(f"degenerate zero {point.name!r}")
        summand = numerator / det_value
        per_point.append((point.name, summand))
        entries.append((point.name, summand))
        if point_hints is not None:
            hints[point.name] = point_hints
    value = _sum_point_values(entries, hints) if entries else RatFn.zero()
    return LocalizationResult(value=value, per_point=per_point,
                              tau_exponent=n + (-n), t_exponent=n + (-n))


def baum_bott_sum(model: VarietyModel, phi: ChernPoly) -> LocalizationResult:
    """Residue sum for a meromorphic field: the integrand in the classes of
    the twisted Jacobians at the zeroes, over their top class. Every point
    must declare its twist trivialization weight; for weighted-homogeneous
    integrands the value does not depend on those choices."""
    if model.dim < 1:
        raise LocalizationError("model dimension must be positive")
    _require_valid(model)
    _check_integrand(phi, model.dim, model.dim, "integrand")
    missing = [p.name for p in model.points if p.twist_weight is None]
    if missing:
        raise LocalizationError(
            "missing twist weight at: " + ", ".join(missing))
    numerators = []
    for point in model.points:
        es = elementary_symmetric(_bracket_matrix(point))
        numerators.append((point, phi.evaluate(es)))
    return _assemble(model, numerators)


def bracket_determinant(point: FixedPoint) -> RatFn:
    """det of the bracket linearization at a point (the residue denominator)."""
    det_value, _ = _denominator_data(_bracket_matrix(point))
    return det_value


def weight_independent_constant(result: LocalizationResult) -> Fraction:
    """Assert a localization value reduced to a constant and return it."""
    if not result.value.is_constant():
        raise LocalizationError(f"value is not constant: {result.value}")
    return result.value.as_fraction()
