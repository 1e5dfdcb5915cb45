"""Service handlers: pure functions from request models to response models.

The FastAPI app binds these to routes; the command-line client calls them
in-process. Engine errors surface as ServiceError with an HTTP-style status.
"""

from __future__ import annotations

from fractions import Fraction

from .. import __version__
from ..chern import chern_poly_from_expr
from ..exact import RatFn
from ..expr import ParseError, WEIGHT_CONTEXT, parse_ratfn
from ..localize import (
    LocalizationError,
    LocalizationResult,
    baum_bott_sum,
    bott_sum,
    carrell_liebermann_sum,
)
from ..model import (
    FixedPoint,
    ModelSchemaError,
    VarietyModel,
    build_p1_meromorphic_field,
    build_p2_meromorphic_field,
    build_product,
    build_projective_space,
    model_from_dict,
    model_to_dict,
    validate,
)
from ..residue import ResidueError, ResidueProblem, residue_contour_numeric
from ..verify import dh_scenario, run_suite
from .schemas import (
    BaumBottRequest,
    BottRequest,
    CarrellLiebermannRequest,
    HealthResponse,
    LocalizationResponse,
    ModelDocumentRequest,
    ModelSource,
    ModelValidateResponse,
    PointValue,
    ResidueRequest,
    ResidueResponse,
    ScenarioReportModel,
    VerifyRequest,
    VerifyResponse,
)


class ServiceError(Exception):
    def __init__(self, message: str, status: int = 400):
        super().__init__(message)
        self.status = status


def _wrap_engine_errors(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (LocalizationError, ModelSchemaError, ResidueError, ParseError,
            ZeroDivisionError, ValueError) as exc:
        raise ServiceError(str(exc)) from exc


def resolve_model(source: ModelSource) -> VarietyModel:
    chosen = [name for name, value in
              [("model", source.model), ("product", source.product), ("pn", source.pn)]
              if value is not None]
    if len(chosen) > 1:
        raise ServiceError(f"give exactly one model source, got {chosen}")
    if source.model is not None:
        return _wrap_engine_errors(model_from_dict, source.model)
    if source.product is not None:
        dims = source.product
        if len(dims) < 2:
            raise ServiceError("a product needs at least two factors")
        first = 0
        factors = []
        for n in dims:
            factors.append(_wrap_engine_errors(build_projective_space, n,
                                               first_index=first))
            first += n + 1
        model = factors[0]
        for factor in factors[1:]:
            model = build_product(model, factor)
        return model
    if source.pn is not None:
        weights = None
        if source.weights:
            try:
                weights = [parse_ratfn(w.strip(), WEIGHT_CONTEXT)
                           for w in source.weights.split(",")]
            except (ParseError, ZeroDivisionError) as exc:
                raise ServiceError(f"bad weight list: {exc}") from exc
        return _wrap_engine_errors(build_projective_space, source.pn, weights)
    raise ServiceError("no model source given (need pn, product, or model)")


def _localization_response(result: LocalizationResult) -> LocalizationResponse:
    value = result.value
    constant = value.is_constant()
    return LocalizationResponse(
        value=str(value),
        value_float=float(value.as_fraction()) if constant else None,
        is_constant=constant,
        per_point=[PointValue(point=name, value=str(v))
                   for name, v in result.per_point],
        tau_exponent=result.tau_exponent,
        t_exponent=result.t_exponent,
    )


def handle_bott(request: BottRequest) -> LocalizationResponse:
    model = resolve_model(request.source)
    phi = _wrap_engine_errors(chern_poly_from_expr, request.phi, model.dim)
    result = _wrap_engine_errors(bott_sum, model, phi)
    return _localization_response(result)


def handle_carrell_liebermann(request: CarrellLiebermannRequest) -> LocalizationResponse:
    model = resolve_model(request.source)
    if request.twist != 1:
        scaled = tuple(
            FixedPoint(p.name, p.tangent, p.bundle_endo,
                       p.line_weight * RatFn.const(request.twist)
                       if p.line_weight is not None else None,
                       p.twist_weight)
            for p in model.points)
        model = VarietyModel(dim=model.dim, rank=model.rank, points=scaled,
                             symbolic=model.symbolic)
    rank = model.rank if model.rank else 1
    p = _wrap_engine_errors(chern_poly_from_expr, request.p, rank,
                            weight=model.dim)
    result = _wrap_engine_errors(carrell_liebermann_sum, model, p)
    return _localization_response(result)


def handle_baum_bott(request: BaumBottRequest) -> LocalizationResponse:
    sources = [name for name, value in [("p1_roots", request.p1_roots),
                                        ("p2_twist", request.p2_twist),
                                        ("model", request.model)]
               if value is not None]
    if len(sources) != 1:
        raise ServiceError(
            f"give exactly one of p1_roots, p2_twist, or model, got {sources or 'none'}")
    if request.p1_roots is not None:
        try:
            roots = [Fraction(r.strip()) for r in request.p1_roots.split(",")]
        except ValueError as exc:
            raise ServiceError(f"bad root list: {exc}") from exc
        model = _wrap_engine_errors(build_p1_meromorphic_field, roots)
    elif request.p2_twist is not None:
        rhos = request.p2_rhos or "1/2,1/3"
        try:
            rho1, rho2 = (Fraction(r.strip()) for r in rhos.split(","))
        except ValueError as exc:
            raise ServiceError(f"bad rho list: {exc}") from exc
        model = _wrap_engine_errors(build_p2_meromorphic_field,
                                    request.p2_twist, rho1, rho2)
    else:
        model = _wrap_engine_errors(model_from_dict, request.model)
    phi = _wrap_engine_errors(chern_poly_from_expr, request.phi, model.dim)
    result = _wrap_engine_errors(baum_bott_sum, model, phi)
    return _localization_response(result)


def handle_residue(request: ResidueRequest) -> ResidueResponse:
    problem = _wrap_engine_errors(
        ResidueProblem.from_text, request.dim, request.components,
        request.numerator, request.center)
    value = _wrap_engine_errors(
        residue_contour_numeric, problem, radius=request.radius,
        samples=request.samples)
    if abs(value.imag) > 1e-9:
        formatted = f"{value.real:.9f} + {value.imag:.9f}i"
    else:
        formatted = f"{value.real:.9f}"
    return ResidueResponse(value_re=value.real, value_im=value.imag,
                           formatted=formatted)


def handle_dh() -> ScenarioReportModel:
    report = dh_scenario()
    return ScenarioReportModel(**report.to_dict())


def handle_verify(request: VerifyRequest) -> VerifyResponse:
    reports = run_suite(request.scenarios)
    models = [ScenarioReportModel(**r.to_dict()) for r in reports]
    return VerifyResponse(reports=models,
                          all_passed=all(r.status == "pass" for r in models))


def handle_model_validate(request: ModelDocumentRequest) -> ModelValidateResponse:
    model = _wrap_engine_errors(model_from_dict, request.model)
    report = validate(model)
    return ModelValidateResponse(
        valid=report.ok,
        dim=model.dim,
        rank=model.rank,
        points=len(model.points),
        degenerate=report.degenerate,
        warnings=report.warnings,
        canonical=model_to_dict(model),
    )


def handle_health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)
