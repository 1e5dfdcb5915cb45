"""Grothendieck residues.

Exact evaluation at a nondegenerate common zero (value over Jacobian
determinant) plus an independent numerical oracle: the residue as an
iterated contour integral of s / (a_1 ... a_n) over the distinguished
boundary of a polydisc, computed with the trapezoidal product rule, which is
spectrally accurate for these periodic integrands. The numeric oracle also
covers degenerate zeroes, where the exact quotient formula does not apply.

Polynomial data carries exact Gaussian-rational coefficients (the grammar
admits the imaginary literal); evaluation on quadrature grids uses Horner's
scheme one variable at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exact import RatFn, SquareMatrix, det
from .expr import coordinate_context, evaluate, parse_expr


class ResidueError(ValueError):
    pass


class DegenerateResidueError(ResidueError):
    """Vanishing Jacobian: the exact quotient formula does not apply."""


class TorusTooCloseError(ResidueError):
    """The component product nearly vanishes on the sampled torus."""


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex rational a + b*i."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @classmethod
    def of(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        return cls(Fraction(value), Fraction(0))

    def __add__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        other = GaussianRational.of(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    def __truediv__(self, other):
        other = GaussianRational.of(other)
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero")
        return GaussianRational((self.re * other.re + self.im * other.im) / norm,
                                (self.im * other.re - self.re * other.im) / norm)

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational.of(1) / self ** (-k)
        out = GaussianRational.of(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"{self.re} {sign} {imag}"


class CPoly:
    """Sparse polynomial in z1..z{nvars} with Gaussian-rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for expo, coeff in (terms or {}).items():
            expo = tuple(expo)
            if len(expo) != nvars:
                raise ValueError(f"exponent vector {expo} has length != {nvars}")
            coeff = coeff if isinstance(coeff, GaussianRational) else GaussianRational.of(coeff)
            if not coeff.is_zero():
                clean[expo] = coeff
        self.terms = clean

    @classmethod
    def const(cls, nvars: int, value) -> "CPoly":
        value = value if isinstance(value, GaussianRational) else GaussianRational.of(value)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def coordinate(cls, nvars: int, index: int) -> "CPoly":
        expo = [0] * nvars
        expo[index] = 1
        return cls(nvars, {tuple(expo): GaussianRational.of(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return all(not any(e) for e in self.terms)

    def const_value(self) -> GaussianRational:
        if not self.is_const():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((0,) * self.nvars, GaussianRational())

    def __add__(self, other: "CPoly") -> "CPoly":
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            cur = out.get(expo)
            out[expo] = coeff if cur is None else cur + coeff
        return CPoly(self.nvars, out)

    def __neg__(self):
        return CPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "CPoly") -> "CPoly":
        return self + (-other)

    def __mul__(self, other: "CPoly") -> "CPoly":
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                prod = ca * cb
                cur = out.get(key)
                out[key] = prod if cur is None else cur + prod
        return CPoly(self.nvars, out)

    def scale(self, factor: GaussianRational) -> "CPoly":
        return CPoly(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = CPoly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def derivative(self, index: int) -> "CPoly":
        out = {}
        for expo, coeff in self.terms.items():
            e = expo[index]
            if e:
                key = expo[:index] + (e - 1,) + expo[index + 1:]
                out[key] = coeff * GaussianRational.of(e)
        return CPoly(self.nvars, out)

    def evaluate_exact(self, point: Sequence[GaussianRational]) -> GaussianRational:
        acc = GaussianRational()
        for expo, coeff in self.terms.items():
            term = coeff
            for value, e in zip(point, expo):
                if e:
                    term = term * value ** e
            acc = acc + term
        return acc

    def eval_grid(self, arrays):
        """Evaluate on broadcastable numpy arrays, Horner per variable."""
        return _horner(self.terms, self.nvars, arrays, 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, CPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for expo in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            coeff = self.terms[expo]
            mono = "*".join(f"z{i + 1}" if m == 1 else f"z{i + 1}^{m}"
                            for i, m in enumerate(expo) if m)
            c = str(coeff)
            if mono:
                parts.append(f"({c})*{mono}" if (" " in c or "/" in c) else
                             (mono if c == "1" else f"-{mono}" if c == "-1" else f"{c}*{mono}"))
            else:
                parts.append(c)
        return " + ".join(parts)

    __repr__ = __str__


def _horner(terms, nvars, arrays, depth):
    if depth == nvars:
        coeff = terms.get((), GaussianRational()) if isinstance(terms, dict) else terms
        return coeff.to_complex()
    groups = {}
    for expo, coeff in terms.items():
        groups.setdefault(expo[0], {})[expo[1:]] = coeff
    degrees = sorted(groups, reverse=True)
    z = arrays[depth]
    acc = None
    prev = None
    for d in degrees:
        sub = _horner(groups[d], nvars, arrays, depth + 1)
        if acc is None:
            acc = sub
        else:
            acc = acc * z ** (prev - d) + sub
        prev = d
    if acc is None:
        return 0.0 + 0.0j
    if prev:
        acc = acc * z ** prev
    return acc


class CPolyDomain:
    """Expression-evaluation domain producing CPoly values."""

    def __init__(self, nvars: int):
        self.nvars = nvars

    def rational(self, value: Fraction) -> CPoly:
        return CPoly.const(self.nvars, value)

    def imaginary(self) -> CPoly:
        return CPoly.const(self.nvars, GaussianRational(Fraction(0), Fraction(1)))

    def symbol(self, name: str) -> CPoly:
        index = int(name[1:]) - 1
        return CPoly.coordinate(self.nvars, index)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if not b.is_const():
            raise ValueError("can only divide by constants in polynomial data")
        return a.scale(GaussianRational.of(1) / b.const_value())

    def neg(self, a):
        return -a

    def power(self, a, k):
        return a ** k


def parse_cpoly(text: str, dim: int) -> CPoly:
    """Parse a polynomial in z1..z{dim} with complex rational coefficients."""
    ast = parse_expr(text, coordinate_context(dim))
    return evaluate(ast, CPolyDomain(dim))


# ---------------------------------------------------------------------------
# Residue problems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ResidueProblem:
    """Local data for one Grothendieck residue: n components a_i with a
    common isolated zero at the center, and a numerator s."""

    dim: int
    components: tuple
    numerator: CPoly
    center: tuple = None

    def __post_init__(self):
        components = tuple(self.components)
        object.__setattr__(self, "components", components)
        if len(components) != self.dim:
            raise ResidueError(f"need {self.dim} components, got {len(components)}")
        for a in components:
            if a.nvars != self.dim:
                raise ResidueError("component variable count mismatch")
        if self.numerator.nvars != self.dim:
            raise ResidueError("numerator variable count mismatch")
        center = self.center
        if center is None:
            center = tuple(GaussianRational() for _ in range(self.dim))
        else:
            center = tuple(GaussianRational.of(c) for c in center)
        if len(center) != self.dim:
            raise ResidueError("center dimension mismatch")
        object.__setattr__(self, "center", center)
        for k, a in enumerate(components):
            if not a.evaluate_exact(center).is_zero():
                raise ResidueError(f"component {k + 1} does not vanish at the center")

    @classmethod
    def from_text(cls, dim: int, components: Sequence[str], numerator: str,
                  center: Optional[Sequence] = None) -> "ResidueProblem":
        comps = tuple(parse_cpoly(a, dim) for a in components)
        num = parse_cpoly(numerator, dim)
        ctr = None
        if center is not None:
            ctr = tuple(GaussianRational.of(Fraction(c)) if not isinstance(c, GaussianRational)
                        else c for c in center)
        return cls(dim=dim, components=comps, numerator=num, center=ctr)


def residue_nondegenerate(s0, jacobian: SquareMatrix) -> RatFn:
    """Exact residue at a nondegenerate zero: numerator value over the
    Jacobian determinant."""
    d = det(jacobian)
    if d.is_zero():
        raise DegenerateResidueError(
            "Jacobian determinant vanishes; use the numeric contour oracle")
    return RatFn.coerce(s0) / d


_MIN_SAMPLES = 64
_MAX_DIM = 3


def residue_contour_numeric(problem: ResidueProblem, radius: float = 0.5,
                            samples: int = 256) -> complex:
    """Trapezoidal product-rule approximation of the residue integral over
    the torus |z_i - c_i| = radius.

    With z_i = c_i + R e^{i theta_i} the integral becomes the plain mean of
    s(z) * prod(z_i - c_i) / prod(a_i(z)) over the uniform angle grid.

    The coordinate torus must be an admissible cycle for the zero: besides
    the checked nonvanishing of the component product, each component should
    wind with its own coordinate on the torus (diagonally dominant linear
    parts are safe). Radius selection is heuristic; the default can be
    overridden per problem.
    """
    if radius <= 0:
        raise ResidueError("radius must be positive")
    if samples < _MIN_SAMPLES or samples & (samples - 1):
        raise ResidueError(f"samples must be a power of two >= {_MIN_SAMPLES}")
    n = problem.dim
    if not 1 <= n <= _MAX_DIM:
        raise ResidueError(f"numeric oracle supports dimensions 1..{_MAX_DIM}")
    angles = 2.0 * np.pi * np.arange(samples) / samples
    ring = radius * np.exp(1j * angles)
    centers = [c.to_complex() for c in problem.center]
    total = 0.0 + 0.0j
    min_mod = np.inf
    max_mod = 0.0
    if n <= 2:
        chunks = [None]
    else:
        chunks = range(samples)
    for chunk in chunks:
        arrays = []
        offsets = []
        if n == 1:
            arrays = [centers[0] + ring]
            offsets = [ring]
        elif n == 2:
            arrays = [centers[0] + ring[:, None], centers[1] + ring[None, :]]
            offsets = [ring[:, None], ring[None, :]]
        else:
            z0 = ring[chunk]
            arrays = [centers[0] + z0,
                      centers[1] + ring[:, None],
                      centers[2] + ring[None, :]]
            offsets = [z0, ring[:, None], ring[None, :]]
        denom = None
        for a in problem.components:
            value = a.eval_grid(arrays)
            denom = value if denom is None else denom * value
        denom = np.asarray(denom, dtype=complex)
        mods = np.abs(denom)
        min_mod = min(min_mod, float(mods.min()))
        max_mod = max(max_mod, float(mods.max()))
        if min_mod < 1e-8 * max(max_mod, 1.0):
            raise TorusTooCloseError(
                f"component product has modulus {min_mod:.3e} on the torus "
                f"(scale {max_mod:.3e}); choose a different radius")
        numer = np.asarray(problem.numerator.eval_grid(arrays), dtype=complex)
        jac = None
        for off in offsets:
            jac = off if jac is None else jac * off
        values = numer * jac / denom
        total += complex(np.sum(values))
    result = total / samples ** n
    if not np.isfinite(result.real) or not np.isfinite(result.imag):
        raise ResidueError("non-finite quadrature result")
    return result


@dataclass
class TotalResidue:
    exact: RatFn
    numeric: complex

    def combined(self) -> complex:
        approx = complex(float(self.exact.as_fraction())) if self.exact.is_constant() \
            else None
        if approx is None:
            raise ResidueError("exact part is symbolic; no combined float value")
        return approx + self.numeric


def residue_total(nondegenerate: Sequence, degenerate: Sequence[ResidueProblem],
                  radius: float = 0.5, samples: int = 256) -> TotalResidue:
    """Exact sum over nondegenerate zero data plus numeric sum over
    degenerate residue problems, reported separately."""
    exact = RatFn.zero()
    for s0, jacobian in nondegenerate:
        exact = exact + residue_nondegenerate(s0, jacobian)
    numeric = 0.0 + 0.0j
    for problem in degenerate:
        numeric += residue_contour_numeric(problem, radius=radius, samples=samples)
    return TotalResidue(exact=exact, numeric=numeric)
