"""Characteristic classes: weighted degrees, series arithmetic, Chern numbers."""

from fractions import Fraction

import pytest

from loccalc.chern import (
    ClassSeries,
    DegenerateZeroError,
    check_weighted_degree,
    chern_numbers_Pn,
    chern_poly_from_expr,
    equivariant_chern_at_point,
    virtual_chern_numbers_Pn,
    virtual_classes_pn,
)
from loccalc.exact import RatFn, SquareMatrix, elementary_symmetric
from loccalc.model import FixedPoint, build_projective_space

from oracles import truncated_geometric, truncated_series_mul


def phi(text, n, weight=None, **kw):
    return chern_poly_from_expr(text, n, weight=weight, **kw)


class TestWeightedDegree:
    def test_c1_cubed_on_threefold(self):
        assert check_weighted_degree(phi("c1^3", 3))

    def test_c1_c2_on_threefold(self):
        assert check_weighted_degree(phi("c1*c2", 3))

    def test_c2_squared_has_weight_four(self):
        p = phi("c2^2", 3, inhomogeneous=True)
        assert not p.is_weighted_homogeneous(3)
        assert p.is_weighted_homogeneous(4)

    def test_inhomogeneous_rejected_at_construction(self):
        with pytest.raises(ValueError, match="homogeneous"):
            phi("c1 + c2", 2)

    def test_mixed_weight_sum_accepted_with_flag(self):
        p = phi("c1 + c2", 2, inhomogeneous=True)
        assert not p.is_weighted_homogeneous(2)


class TestEquivariantClasses:
    def test_diagonal_numbers(self):
        pt = FixedPoint("q", SquareMatrix.diagonal([1, 2]))
        es = equivariant_chern_at_point(pt)
        assert [e.as_fraction() for e in es] == [Fraction(3), Fraction(2)]

    def test_p1_point_weight(self):
        m = build_projective_space(1)
        es = equivariant_chern_at_point(m.points[0])
        assert es == [RatFn.var("l1") - RatFn.var("l0")]

    def test_matches_kernel_symmetric_functions(self):
        pt = FixedPoint("q", SquareMatrix([[1, 2], [3, 4]]))
        assert equivariant_chern_at_point(pt) == elementary_symmetric(pt.tangent)

    def test_degenerate_point_rejected(self):
        pt = FixedPoint("q", SquareMatrix([[0]]))
        with pytest.raises(DegenerateZeroError):
            equivariant_chern_at_point(pt)

    def test_top_class_is_determinant(self):
        m = build_projective_space(2)
        from loccalc.exact import det
        for pt in m.points:
            assert equivariant_chern_at_point(pt)[-1] == det(pt.tangent)


class TestClassSeries:
    def test_quotient_times_divisor_round_trip(self):
        tangent = ClassSeries.binomial_total_class(3, 4)
        line = ClassSeries.line_class(3, -2)
        assert (tangent / line) * line == tangent

    def test_inverse_matches_geometric_series(self):
        line = ClassSeries.line_class(4, -3)  # 1 - 3H
        assert line.inverse().coefficients == truncated_geometric(3, 4)

    def test_virtual_classes_against_manual_truncated_product(self):
        # (1+H)^3 * (1 + dH + d^2 H^2) for n = 2, d = 2
        lhs = [Fraction(1), Fraction(3), Fraction(3)]
        rhs = truncated_geometric(2, 2)
        expected = truncated_series_mul(lhs, rhs, 2)[1:]
        assert virtual_classes_pn(2, 2) == expected


class TestChernNumbers:
    def test_virtual_on_line_with_twist(self):
        # gamma_1 = (2 + d) H on the line
        assert virtual_chern_numbers_Pn(1, 1, phi("c1", 1)) == 3

    def test_virtual_reduces_to_tangent_for_zero_twist(self):
        assert virtual_chern_numbers_Pn(1, 0, phi("c1", 1)) == 2

    def test_virtual_plane_top_square(self):
        assert virtual_chern_numbers_Pn(2, 0, phi("c1^2", 2)) == 9

    def test_classical_values(self):
        assert chern_numbers_Pn(2, phi("c2", 2)) == 3
        assert chern_numbers_Pn(2, phi("c1^2", 2)) == 9
        assert chern_numbers_Pn(3, phi("c1*c2", 3)) == 24

    def test_zero_twist_always_agrees_with_classical(self):
        cases = [(2, "c1^2"), (2, "c2"), (3, "c1^3"), (3, "c1*c2"), (3, "c3")]
        for n, text in cases:
            p = phi(text, n)
            assert virtual_chern_numbers_Pn(n, 0, p) == chern_numbers_Pn(n, p)

    def test_inhomogeneous_integrand_rejected(self):
        p = phi("c2^2", 3, inhomogeneous=True)
        with pytest.raises(ValueError, match="homogeneous"):
            virtual_chern_numbers_Pn(3, 1, p)

    def test_chern_character_consistency_low_dim(self):
        # ch_1 = gamma_1 and 2 ch_2 = gamma_1^2 - 2 gamma_2 must match the
        # additive character (n+1) e^H - 1 - e^{-dH} of the virtual bundle
        for d in range(4):
            g = virtual_classes_pn(1, d)
            assert g[0] == Fraction(2 + d)
        for d in range(4):
            g = virtual_classes_pn(2, d)
            ch2_from_classes = (g[0] ** 2 - 2 * g[1]) / 2
            ch2_direct = Fraction(3, 2) - Fraction(d * d, 2)
            assert ch2_from_classes == ch2_direct


class TestParsing:
    def test_rational_coefficients(self):
        p = phi("1/2*c1^2 - c2", 2)
        assert p.terms[(2, 0)] == Fraction(1, 2)
        assert p.terms[(0, 1)] == Fraction(-1)

    def test_non_polynomial_rejected(self):
        with pytest.raises(ValueError, match="not a polynomial"):
            phi("1/c1", 1)

    def test_bundle_classes_with_ambient_weight(self):
        p = chern_poly_from_expr("c1^3", 1, weight=3)
        assert p.nclasses == 1 and p.is_weighted_homogeneous(3)
