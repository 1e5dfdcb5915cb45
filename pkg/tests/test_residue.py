"""Grothendieck residues: exact quotients vs the contour quadrature oracle."""

import random
from fractions import Fraction

import pytest

from loccalc.exact import RatFn, SquareMatrix, det
from loccalc.residue import (
    CPoly,
    DegenerateResidueError,
    GaussianRational,
    ResidueError,
    ResidueProblem,
    TorusTooCloseError,
    parse_cpoly,
    residue_contour_numeric,
    residue_nondegenerate,
    residue_total,
)


def problem(dim, components, numerator, center=None):
    return ResidueProblem.from_text(dim, components, numerator, center)


class TestGaussianRational:
    def test_field_ops(self):
        i = GaussianRational(Fraction(0), Fraction(1))
        assert i * i == GaussianRational.of(-1)
        assert (GaussianRational.of(1) + i) * (GaussianRational.of(1) - i) == \
            GaussianRational.of(2)
        assert (GaussianRational.of(1) / i) == -i

    def test_power(self):
        i = GaussianRational(Fraction(0), Fraction(1))
        assert i ** 4 == GaussianRational.of(1)
        assert i ** -1 == -i


class TestCPoly:
    def test_parse_with_imaginary(self):
        p = parse_cpoly("z1^2 + i*z2", 2)
        assert p.terms[(2, 0)] == GaussianRational.of(1)
        assert p.terms[(0, 1)] == GaussianRational(Fraction(0), Fraction(1))

    def test_exact_evaluation(self):
        p = parse_cpoly("z1^2 - 2*z1 + 1", 1)
        assert p.evaluate_exact([GaussianRational.of(1)]).is_zero()

    def test_derivative(self):
        p = parse_cpoly("z1^2*z2", 2)
        assert p.derivative(0) == parse_cpoly("2*z1*z2", 2)

    def test_grid_evaluation_matches_exact(self):
        import numpy as np
        p = parse_cpoly("z1^3 - i*z1 + 2", 1)
        z = np.array([0.3 + 0.1j, -1.2j])
        got = p.eval_grid([z])
        for zk, gk in zip(z, got):
            expected = zk ** 3 - 1j * zk + 2
            assert abs(gk - expected) < 1e-12


class TestResidueProblem:
    def test_component_must_vanish_at_center(self):
        with pytest.raises(ResidueError, match="does not vanish"):
            problem(1, ["z1 + 1"], "1")

    def test_shifted_center_accepted(self):
        p = problem(1, ["z1 - 1"], "1", center=[1])
        assert p.center[0] == GaussianRational.of(1)

    def test_dimension_mismatch(self):
        with pytest.raises(ResidueError, match="components"):
            ResidueProblem(dim=2, components=(parse_cpoly("z1", 2),),
                           numerator=parse_cpoly("1", 2))


class TestNondegenerateQuotient:
    def test_simple_quotient(self):
        value = residue_nondegenerate(Fraction(5), SquareMatrix.diagonal([2, 1]))
        assert value.as_fraction() == Fraction(5, 2)

    def test_zero_numerator(self):
        assert residue_nondegenerate(0, SquareMatrix.diagonal([3])).is_zero()

    def test_symbolic_quotient(self):
        l0, l1 = RatFn.var("l0"), RatFn.var("l1")
        jac = SquareMatrix.diagonal([l0 - l1, l0])
        value = residue_nondegenerate(l0 ** 2, jac)
        assert value == l0 / (l0 - l1)

    def test_degenerate_redirects_to_oracle(self):
        with pytest.raises(DegenerateResidueError, match="contour"):
            residue_nondegenerate(1, SquareMatrix.diagonal([0, 1]))


class TestContourOracle:
    def test_cauchy_integral(self):
        value = residue_contour_numeric(problem(1, ["z1"], "1"))
        assert abs(value - 1.0) <= 1e-9

    def test_laurent_coefficient(self):
        value = residue_contour_numeric(problem(1, ["z1^2"], "z1"))
        assert abs(value - 1.0) <= 1e-9

    def test_separable_two_dimensional(self):
        value = residue_contour_numeric(problem(2, ["z1^2", "z2^3"], "z1*z2^2"))
        assert abs(value - 1.0) <= 1e-8

    def test_linear_system_matches_inverse_determinant(self):
        rng = random.Random(67)
        for _ in range(20):
            a, mat = _random_linear_problem(rng, 2)
            exact = det(mat).as_fraction()
            value = residue_contour_numeric(a)
            assert abs(value - 1.0 / float(exact)) <= 1e-9 * max(1.0, abs(1.0 / float(exact)))

    def test_shifted_center(self):
        value = residue_contour_numeric(problem(1, ["z1 - 2"], "z1", center=[2]))
        assert abs(value - 2.0) <= 1e-9

    def test_sample_count_validation(self):
        with pytest.raises(ResidueError, match="power of two"):
            residue_contour_numeric(problem(1, ["z1"], "1"), samples=100)
        with pytest.raises(ResidueError, match="power of two"):
            residue_contour_numeric(problem(1, ["z1"], "1"), samples=32)

    def test_torus_through_zero_rejected(self):
        # a = z(z - 1/2) vanishes at the center and on the torus |z| = 1/2
        with pytest.raises(TorusTooCloseError, match="radius"):
            residue_contour_numeric(problem(1, ["z1^2 - z1/2"], "1"), radius=0.5)

    def test_radius_independence(self):
        p = problem(2, ["z1 + z2/4", "z2 - z1/3"], "1")
        a = residue_contour_numeric(p, radius=0.5)
        b = residue_contour_numeric(p, radius=0.8)
        assert abs(a - b) <= 1e-9

    def test_spectral_convergence(self):
        p = problem(1, ["z1 - z1^2/3"], "1")
        coarse = residue_contour_numeric(p, samples=256)
        fine = residue_contour_numeric(p, samples=512)
        assert abs(coarse - fine) < 1e-10

    def test_linearity_in_numerator(self):
        comps = ["z1 + z2/5", "z2 - z1/7"]
        s1, s2 = "z1 + 1", "z2^2 - i"
        alpha, beta = 3.0, -2.0
        combo = problem(2, comps, f"3*(z1 + 1) - 2*(z2^2 - i)")
        v1 = residue_contour_numeric(problem(2, comps, s1))
        v2 = residue_contour_numeric(problem(2, comps, s2))
        v = residue_contour_numeric(combo)
        assert abs(v - (alpha * v1 + beta * v2)) <= 1e-9

    def test_three_dimensional_separable(self):
        value = residue_contour_numeric(
            problem(3, ["z1", "z2^2", "z3"], "z2"), samples=64)
        assert abs(value - 1.0) <= 1e-8


class TestResidueTotal:
    def test_two_nondegenerate_zeroes_cancel(self):
        total = residue_total(
            nondegenerate=[(Fraction(1), SquareMatrix.diagonal([1])),
                           (Fraction(1), SquareMatrix.diagonal([-1]))],
            degenerate=[])
        assert total.exact.is_zero()
        assert total.numeric == 0

    def test_exact_plus_numeric_reported_separately(self):
        total = residue_total(
            nondegenerate=[],
            degenerate=[problem(1, ["z1^2"], "z1")])
        assert total.exact.is_zero()
        assert abs(total.numeric - 1.0) <= 1e-9

    def test_field_with_two_simple_zeroes(self):
        # z(z-1) d/dz has zeroes 0 and 1; the Jacobians are the derivative
        # values there, computed from the polynomial itself
        p = parse_cpoly("z1^2 - z1", 1)
        dp = p.derivative(0)
        j0 = dp.evaluate_exact([GaussianRational.of(0)])
        j1 = dp.evaluate_exact([GaussianRational.of(1)])
        assert (j0.re, j1.re) == (Fraction(-1), Fraction(1))
        total = residue_total(
            nondegenerate=[(Fraction(1), SquareMatrix.diagonal([j0.re])),
                           (Fraction(1), SquareMatrix.diagonal([j1.re]))],
            degenerate=[])
        assert total.exact.is_zero()


def _random_linear_problem(rng, n):
    """Residue data for a = A z with a diagonally dominant rational A.

    Dominance keeps the coordinate torus an admissible cycle for the zero at
    the origin (each component winds with its own coordinate), which is the
    regime where the iterated contour integral computes the residue.
    """
    while True:
        entries = [[Fraction(rng.randint(-1, 1), rng.randint(4, 8))
                    for _ in range(n)] for _ in range(n)]
        for i in range(n):
            entries[i][i] = 1 + Fraction(rng.randint(-1, 1), rng.randint(4, 8))
        mat = SquareMatrix([[RatFn.const(x) for x in row] for row in entries])
        if not det(mat).is_zero():
            break
    comps = []
    for i in range(n):
        terms = {}
        for j in range(n):
            expo = [0] * n
            expo[j] = 1
            terms[tuple(expo)] = GaussianRational.of(entries[i][j])
        comps.append(CPoly(n, terms))
    prob = ResidueProblem(dim=n, components=tuple(comps),
                          numerator=CPoly.const(n, 1))
    return prob, mat
