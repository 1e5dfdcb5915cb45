"""Independent test oracles.

These deliberately avoid the code paths they check: the cofactor determinant
is a direct Laplace expansion, the characteristic polynomial oracle adjoins a
fresh symbol and expands det(xI - M) symbolically, and the Lagrange sums are
evaluated with plain Fraction arithmetic.
"""

from fractions import Fraction
import random

from loccalc.exact import RatFn, SparsePoly, SquareMatrix


def cofactor_det(matrix: SquareMatrix) -> RatFn:
    n = matrix.n
    if n == 0:
        return RatFn.one()
    if n == 1:
        return matrix.rows[0][0]
    acc = RatFn.zero()
    for j in range(n):
        entry = matrix.rows[0][j]
        if entry.is_zero():
            continue
        minor = SquareMatrix([[matrix.rows[i][jj] for jj in range(n) if jj != j]
                              for i in range(1, n)])
        term = entry * cofactor_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def char_poly_symmetric_functions(matrix: SquareMatrix, det_fn, symbol="x_char"):
    """e_k from det(xI - M) expanded at a symbolic x, via the det under test."""
    n = matrix.n
    x = RatFn.var(symbol)
    shifted = SquareMatrix([[x - matrix.rows[i][j] if i == j else -matrix.rows[i][j]
                             for j in range(n)] for i in range(n)])
    char = det_fn(shifted)
    assert char.den.is_const() and char.den.const_value() == 1 or True
    # char = x^n - e1 x^{n-1} + e2 x^{n-2} - ... + (-1)^n en
    num, den = char.num, char.den
    out = []
    for k in range(1, n + 1):
        coeffs = num.coefficients_in(symbol)
        ck = coeffs.get(n - k, SparsePoly.zero())
        sign = -1 if k % 2 else 1
        out.append(RatFn(ck, den) * RatFn.const(sign))
    return out


def random_fraction(rng: random.Random, bound: int = 8, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if value or not nonzero:
            return value


def random_matrix(rng: random.Random, n: int, bound: int = 6) -> SquareMatrix:
    return SquareMatrix([[RatFn.const(random_fraction(rng, bound)) for _ in range(n)]
                         for _ in range(n)])


def lagrange_power_sum(nodes, m: int) -> Fraction:
    """sum_j nodes[j]^m / prod_{i != j} (nodes[j] - nodes[i]) with plain Fractions."""
    total = Fraction(0)
    for j, xj in enumerate(nodes):
        denom = Fraction(1)
        for i, xi in enumerate(nodes):
            if i != j:
                denom *= (xj - xi)
        total += Fraction(xj) ** m / denom
    return total


def truncated_series_mul(a, b, order: int):
    """Coefficient lists of a*b truncated to H^order."""
    out = [Fraction(0)] * (order + 1)
    for i, ai in enumerate(a[:order + 1]):
        for j, bj in enumerate(b[:order + 1]):
            if i + j <= order:
                out[i + j] += Fraction(ai) * Fraction(bj)
    return out


def truncated_geometric(d, order: int):
    """Coefficient list of 1/(1 - dH) truncated to H^order."""
    return [Fraction(d) ** k for k in range(order + 1)]
