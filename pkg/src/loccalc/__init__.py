"""loccalc: exact evaluation of fixed-point localization formulas.

Characteristic numbers of a compact complex manifold are computed as exact
residue sums over the zeroes of a vector field (Bott's formula, the
Carrell-Liebermann formula, and the Baum-Bott formula for meromorphic
fields), cross-checked symbolically (weight independence) and numerically
(a contour-integration residue oracle and a quadrature check of the complex
Duistermaat-Heckman identity on the projective line).
"""

__version__ = "0.1.0"

from .exact import RatFn, Rational, SparsePoly, SquareMatrix
from .chern import (
    ChernPoly,
    chern_numbers_Pn,
    chern_poly_from_expr,
    virtual_chern_numbers_Pn,
)
from .localize import (
    LocalizationResult,
    baum_bott_sum,
    bott_sum,
    carrell_liebermann_sum,
    localization_rhs,
    zero_sum_identity,
)
from .model import (
    FixedPoint,
    VarietyModel,
    build_p1_meromorphic_field,
    build_p2_meromorphic_field,
    build_product,
    build_projective_space,
    load_model,
    save_model,
    validate,
)
from .residue import ResidueProblem, residue_contour_numeric, residue_nondegenerate

__all__ = [
    "ChernPoly",
    "FixedPoint",
    "LocalizationResult",
    "RatFn",
    "Rational",
    "ResidueProblem",
    "SparsePoly",
    "SquareMatrix",
    "VarietyModel",
    "__version__",
    "baum_bott_sum",
    "bott_sum",
    "build_p1_meromorphic_field",
    "build_p2_meromorphic_field",
    "build_product",
    "build_projective_space",
    "carrell_liebermann_sum",
    "chern_numbers_Pn",
    "chern_poly_from_expr",
    "load_model",
    "localization_rhs",
    "residue_contour_numeric",
    "residue_nondegenerate",
    "save_model",
    "validate",
    "virtual_chern_numbers_Pn",
    "zero_sum_identity",
]
