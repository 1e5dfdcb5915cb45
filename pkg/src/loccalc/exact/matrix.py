"""Square matrices over the rational-function field.

Determinants use fraction-free Bareiss elimination over the polynomial ring
(denominators are cleared row by row first, pivot exchanges tracked by sign).
Elementary symmetric functions of the eigenvalues are read off the
characteristic polynomial via the Faddeev-LeVerrier recursion; no eigenvalue
extraction takes place.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import SparsePoly, divexact, poly_lcm
from .ratfunc import RatFn


class SquareMatrix:
    """Immutable n x n matrix with RatFn entries."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(RatFn.coerce(x) for x in row) for row in rows)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
        self.n = n
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> "SquareMatrix":
        one, zero = RatFn.one(), RatFn.zero()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries) -> "SquareMatrix":
        entries = [RatFn.coerce(x) for x in entries]
        zero = RatFn.zero()
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def block_diagonal(cls, a: "SquareMatrix", b: "SquareMatrix") -> "SquareMatrix":
        zero = RatFn.zero()
        rows = []
        for i in range(a.n):
            rows.append(list(a.rows[i]) + [zero] * b.n)
        for i in range(b.n):
            rows.append([zero] * a.n + list(b.rows[i]))
        return cls(rows)

    def entry(self, i: int, j: int) -> RatFn:
        return self.rows[i][j]

    def scale(self, factor) -> "SquareMatrix":
        factor = RatFn.coerce(factor)
        return SquareMatrix([[x * factor for x in row] for row in self.rows])

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = RatFn.zero()
                for k in range(n):
                    a = self.rows[i][k]
                    if a.is_zero():
                        continue
                    b = other.rows[k][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return SquareMatrix(rows)

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        return SquareMatrix([[a + b for a, b in zip(ra, rb)]
                             for ra, rb in zip(self.rows, other.rows)])

    def trace(self) -> RatFn:
        acc = RatFn.zero()
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_triangular(self) -> bool:
        upper = all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(i))
        if upper:
            return True
        return all(self.rows[i][j].is_zero() for i in range(self.n) for j in range(i + 1, self.n))

    def diagonal_entries(self):
        return [self.rows[i][i] for i in range(self.n)]

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(x) for x in row) for row in self.rows) + "]"

    __repr__ = __str__


def det(matrix: SquareMatrix) -> RatFn:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = matrix.n
    if n == 0:
        return RatFn.one()
    # clear denominators row by row, remembering the multipliers
    cleared = []
    multipliers = []
    for row in matrix.rows:
        m = SparsePoly.const(1)
        for x in row:
            if not x.den.is_const() or x.den.const_value() != 1:
                m = poly_lcm(m, x.den)
        cleared.append([x.num * divexact(m, x.den) for x in row])
        multipliers.append(m)
    sign = 1
    prev = SparsePoly.const(1)
    for k in range(n - 1):
        if cleared[k][k].is_zero():
            for i in range(k + 1, n):
                if not cleared[i][k].is_zero():
                    cleared[k], cleared[i] = cleared[i], cleared[k]
                    sign = -sign
                    break
            else:
                return RatFn.zero()
        pivot = cleared[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                cleared[i][j] = divexact(pivot * cleared[i][j] - cleared[i][k] * cleared[k][j],
                                         prev)
            cleared[i][k] = SparsePoly.zero()
        prev = pivot
    result = cleared[n - 1][n - 1]
    if sign < 0:
        result = -result
    denom = SparsePoly.const(1)
    for m in multipliers:
        denom = denom * m
    return RatFn(result, denom)


def elementary_symmetric(matrix: SquareMatrix) -> list:
    """[e_1, ..., e_n]: signed characteristic-polynomial coefficients.

    Faddeev-LeVerrier: with c_0 = 1, M_k = A M_{k-1} + c_{k-1} I and
    c_k = -tr(A M_k)/k, the characteristic polynomial is
    x^n + c_1 x^{n-1} + ... + c_n and e_k = (-1)^k c_k.
    """
    n = matrix.n
    if n == 0:
        return []
    zero = RatFn.zero()
    mk = SquareMatrix([[zero] * n for _ in range(n)])
    c_prev = RatFn.one()
    out = []
    sign = 1
    for k in range(1, n + 1):
        ident = SquareMatrix.identity(n)
        mk = (matrix @ mk) + ident.scale(c_prev)
        amk = matrix @ mk
        c_k = -(amk.trace() * RatFn.const(Fraction(1, k)))
        sign = -sign
        out.append(c_k * RatFn.const(sign))
        c_prev = c_k
    return out
