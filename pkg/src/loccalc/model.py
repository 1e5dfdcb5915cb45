"""Fixed-point data for a vector field on a compact complex variety.

A model records, for each isolated zero of the field, the linearization in
chart coordinates (we store the *Jacobian* of the field's components; see
``loccalc.localize`` for the sign convention used in residue denominators),
optionally the induced endomorphism of an equivariant bundle fiber, a line
bundle weight, and a twist weight for meromorphic fields.

Builders cover the standard torus actions: projective space with weights
``w_i`` (tangent entries ``w_i - w_j`` at the j-th coordinate point, and the
degree-one line bundle weight ``w_j``), products, and factored meromorphic
fields on the line and the plane whose zero data can be written down in
closed form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .exact import RatFn, SquareMatrix, det
from .expr import WEIGHT_CONTEXT, ParseError, parse_ratfn


class ModelSchemaError(ValueError):
    """A model file violated the schema; the message names the field."""


@dataclass(frozen=True)
class FixedPoint:
    """One isolated zero with its local linearization data."""

    name: str
    tangent: SquareMatrix
    bundle_endo: Optional[SquareMatrix] = None
    line_weight: Optional[RatFn] = None
    twist_weight: Optional[RatFn] = None


@dataclass(frozen=True)
class VarietyModel:
    dim: int
    rank: int
    points: tuple
    symbolic: bool = False

    def __post_init__(self):
        names = set()
        for p in self.points:
            if p.tangent.n != self.dim:
                raise ValueError(
                    f"point {p.name!r}: tangent is {p.tangent.n}x{p.tangent.n}, "
                    f"model dimension is {self.dim}")
            if p.bundle_endo is not None and p.bundle_endo.n != self.rank:
                raise ValueError(
                    f"point {p.name!r}: bundle endomorphism is "
                    f"{p.bundle_endo.n}x{p.bundle_endo.n}, declared rank is {self.rank}")
            if p.name in names:
                raise ValueError(f"duplicate point name {p.name!r}")
            names.add(p.name)

    def point(self, name: str) -> FixedPoint:
        for p in self.points:
            if p.name == name:
                return p
        raise KeyError(name)


@dataclass
class ValidationReport:
    degenerate: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.degenerate


def validate(model: VarietyModel) -> ValidationReport:
    """Nondegeneracy report: every tangent linearization must be invertible."""
    report = ValidationReport()
    if not model.points:
        report.warnings.append("no zeroes: localization sums over this model are 0")
    for p in model.points:
        if det(p.tangent).is_zero():
            report.degenerate.append(p.name)
    return report


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def symbolic_weights(n: int, first_index: int = 0):
    """The weight indeterminates l{first_index}, ..., l{first_index+n-1}."""
    return [RatFn.var(f"l{first_index + k}") for k in range(n)]


def build_projective_space(n: int, weights: Optional[Sequence] = None, *,
                           first_index: int = 0) -> VarietyModel:
    """Projective n-space under the diagonal torus field with given weights.

    The fixed points are the n+1 coordinate points; at the j-th one the chart
    Jacobian of the field is diagonal with entries w_i - w_j (i != j), and
    the degree-one line bundle carries the weight w_j.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if weights is None:
        weights = symbolic_weights(n + 1, first_index)
        symbolic = True
    else:
        if len(weights) != n + 1:
            raise ValueError(f"need {n + 1} weights for dimension {n}")
        weights = [RatFn.coerce(w) for w in weights]
        symbolic = any(not w.is_constant() for w in weights)
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            if weights[a] == weights[b]:
                raise ValueError(
                    f"weights {a} and {b} coincide: the zeroes would be degenerate")
    points = []
    for j in range(n + 1):
        entries = [weights[i] - weights[j] for i in range(n + 1) if i != j]
        points.append(FixedPoint(
            name=f"p{j}",
            tangent=SquareMatrix.diagonal(entries),
            line_weight=weights[j],
        ))
    return VarietyModel(dim=n, rank=1, points=tuple(points), symbolic=symbolic)


def build_product(a: VarietyModel, b: VarietyModel) -> VarietyModel:
    """Product model: paired points, block-diagonal tangent linearizations.

    Bundle data survives only when both factors carry line weights, in which
    case the weights add (external tensor product of the line bundles).
    """
    keep_line = all(p.line_weight is not None for p in a.points) and \
        all(p.line_weight is not None for p in b.points)
    points = []
    for pa in a.points:
        for pb in b.points:
            points.append(FixedPoint(
                name=f"{pa.name}*{pb.name}",
                tangent=SquareMatrix.block_diagonal(pa.tangent, pb.tangent),
                line_weight=(pa.line_weight + pb.line_weight) if keep_line else None,
            ))
    return VarietyModel(
        dim=a.dim + b.dim,
        rank=1 if keep_line else 0,
        points=tuple(points),
        symbolic=a.symbolic or b.symbolic,
    )


def build_p1_meromorphic_field(roots: Sequence) -> VarietyModel:
    """Meromorphic field on the line from a factored polynomial.

    ``prod (z - r_k) d/dz`` with distinct rational roots r_1..r_{d+2} is a
    twisted field of twist degree d = len(roots) - 2; its zeroes are the
    roots, the twisted Jacobian at r_k is prod_{l != k} (r_k - r_l), and the
    chart trivialization weight is recorded as 1.
    """
    roots = [Fraction(r) for r in roots]
    if len(roots) < 2:
        raise ValueError("need at least two roots (twist degree d >= 0)")
    if len(set(roots)) != len(roots):
        raise ValueError("roots must be distinct")
    points = []
    for k, rk in enumerate(roots):
        jac = Fraction(1)
        for l, rl in enumerate(roots):
            if l != k:
                jac *= rk - rl
        points.append(FixedPoint(
            name=f"r{k}",
            tangent=SquareMatrix([[RatFn.const(jac)]]),
            twist_weight=RatFn.one(),
        ))
    return VarietyModel(dim=1, rank=0, points=tuple(points), symbolic=False)


def build_p2_meromorphic_field(d: int, rho1, rho2) -> VarietyModel:
    """Diagonal meromorphic field on the plane with twist degree d in {1, 2}.

    In homogeneous coordinates the field has components
    (z0^{d+1}, b1 z1^{d+1}, b2 z2^{d+1}) with b_i = rho_i^{-d}; in the chart
    around the j-th coordinate point its components are
    a_i(w) = b_i w_i^{d+1} - b_j w_i, so the zero set and the diagonal
    Jacobians are rational exactly when every d-th root involved is rational,
    which restricts d to 1 or 2 (d = 0 collapses this family to the zero
    field; use build_projective_space for the untwisted case). Each zero is
    stored with the Jacobian taken in its own chart trivialization (recorded
    as the twist weight); residue sums of weighted-homogeneous integrands do
    not depend on that choice.
    """
    if d not in (1, 2):
        raise ValueError("closed-form rational zero data requires d in {1, 2}")
    rho1 = Fraction(rho1)
    rho2 = Fraction(rho2)
    if rho1 == 0 or rho2 == 0:
        raise ValueError("root parameters must be nonzero")
    b0 = Fraction(1)
    b1 = rho1 ** -d
    b2 = rho2 ** -d

    def chart_roots(b_num, b_den):
        # nonzero solutions of b_num w^d = b_den, plus the zero solution
        ratio = b_den / b_num
        if d == 1:
            return [Fraction(0), ratio]
        root = _exact_sqrt(ratio)
        return [Fraction(0), root, -root]

    points = []

    def add_points(chart: str, bi, bj, bk, skip_nonzero_first: bool):
        # chart around the coordinate point where coordinate j trivializes;
        # component i: b_i w_i^{d+1} - b_j w_i, derivative (d+1) b_i w_i^d - b_j
        first = chart_roots(bi, bj)
        second = chart_roots(bk, bj)
        for u in first:
            if skip_nonzero_first and u != 0:
                continue
            for v in second:
                e1 = (d + 1) * bi * u ** d - bj
                e2 = (d + 1) * bk * v ** d - bj
                points.append(FixedPoint(
                    name=f"{chart}:{u},{v}",
                    tangent=SquareMatrix.diagonal([RatFn.const(e1), RatFn.const(e2)]),
                    twist_weight=RatFn.const(bj),
                ))

    # chart 0 sees all zeroes with z0 != 0; chart 1 adds z0 = 0, z1 != 0;
    # chart 2 adds only the last coordinate point
    add_points("u0", b1, b0, b2, skip_nonzero_first=False)
    add_points("u1", b0, b1, b2, skip_nonzero_first=True)
    e = -b2
    points.append(FixedPoint(
        name="u2:0,0",
        tangent=SquareMatrix.diagonal([RatFn.const(e), RatFn.const(e)]),
        twist_weight=RatFn.const(b2),
    ))
    expected = d * d + 3 * d + 3
    if len(points) != expected:
        raise AssertionError(f"zero count {len(points)} != {expected}")
    return VarietyModel(dim=2, rank=0, points=tuple(points), symbolic=False)


def _exact_sqrt(value: Fraction) -> Fraction:
    from math import isqrt
    if value < 0:
        raise ValueError(f"{value} has no rational square root")
    num, den = value.numerator, value.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError(f"{value} has no rational square root")
    return Fraction(rn, rd)


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def _ratfn_to_text(value: RatFn) -> str:
    return str(value)


def _matrix_to_lists(m: SquareMatrix):
    return [[_ratfn_to_text(x) for x in row] for row in m.rows]


def model_to_dict(model: VarietyModel) -> dict:
    points = []
    for p in model.points:
        entry = {"name": p.name, "tangent": _matrix_to_lists(p.tangent)}
        if p.bundle_endo is not None:
            entry["bundle_endo"] = _matrix_to_lists(p.bundle_endo)
        if p.line_weight is not None:
            entry["line_weight"] = _ratfn_to_text(p.line_weight)
        if p.twist_weight is not None:
            entry["twist_weight"] = _ratfn_to_text(p.twist_weight)
        points.append(entry)
    return {
        "dim": model.dim,
        "rank": model.rank,
        "symbolic": model.symbolic,
        "points": points,
    }


def _parse_entry(text, where: str) -> RatFn:
    if isinstance(text, int):
        return RatFn.const(text)
    if not isinstance(text, str):
        raise ModelSchemaError(f"{where}: expected an expression string, got {text!r}")
    try:
        return parse_ratfn(text, WEIGHT_CONTEXT)
    except (ParseError, ZeroDivisionError) as exc:
        raise ModelSchemaError(f"{where}: {exc}") from exc


def _parse_matrix(data, where: str, size: int) -> SquareMatrix:
    if not isinstance(data, list) or len(data) != size:
        raise ModelSchemaError(f"{where}: expected {size} rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != size:
            raise ModelSchemaError(f"{where}[{i}]: expected {size} entries")
        rows.append([_parse_entry(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return SquareMatrix(rows)


def model_from_dict(data: dict) -> VarietyModel:
    if not isinstance(data, dict):
        raise ModelSchemaError("model: expected a JSON object")
    for key in ("dim", "rank", "symbolic", "points"):
        if key not in data:
            raise ModelSchemaError(f"model: missing field {key!r}")
    dim = data["dim"]
    rank = data["rank"]
    if not isinstance(dim, int) or dim < 0:
        raise ModelSchemaError("dim: expected a nonnegative integer")
    if not isinstance(rank, int) or rank < 0:
        raise ModelSchemaError("rank: expected a nonnegative integer")
    if not isinstance(data["symbolic"], bool):
        raise ModelSchemaError("symbolic: expected a boolean")
    if not isinstance(data["points"], list):
        raise ModelSchemaError("points: expected a list")
    points = []
    for idx, raw in enumerate(data["points"]):
        where = f"points[{idx}]"
        if not isinstance(raw, dict):
            raise ModelSchemaError(f"{where}: expected an object")
        if "name" not in raw or not isinstance(raw["name"], str):
            raise ModelSchemaError(f"{where}: missing field 'name'")
        if "tangent" not in raw:
            raise ModelSchemaError(f"{where}: missing field 'tangent'")
        tangent = _parse_matrix(raw["tangent"], f"{where}.tangent", dim)
        bundle = None
        if "bundle_endo" in raw and raw["bundle_endo"] is not None:
            bundle = _parse_matrix(raw["bundle_endo"], f"{where}.bundle_endo", rank)
        line_weight = None
        if "line_weight" in raw and raw["line_weight"] is not None:
            line_weight = _parse_entry(raw["line_weight"], f"{where}.line_weight")
        twist_weight = None
        if "twist_weight" in raw and raw["twist_weight"] is not None:
            twist_weight = _parse_entry(raw["twist_weight"], f"{where}.twist_weight")
        points.append(FixedPoint(raw["name"], tangent, bundle, line_weight, twist_weight))
    try:
        return VarietyModel(dim=dim, rank=rank, points=tuple(points),
                            symbolic=data["symbolic"])
    except ValueError as exc:
        raise ModelSchemaError(str(exc)) from exc


def save_model(model: VarietyModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh, indent=2)
        fh.write("\n")


def load_model(path) -> VarietyModel:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ModelSchemaError(f"invalid JSON: {exc}") from exc
    return model_from_dict(data)
