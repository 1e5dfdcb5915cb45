"""FastAPI application exposing the localization calculator."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from .handlers import ServiceError
from .schemas import (
    BaumBottRequest,
    BottRequest,
    CarrellLiebermannRequest,
    HealthResponse,
    LocalizationResponse,
    ModelDocumentRequest,
    ModelValidateResponse,
    ResidueRequest,
    ResidueResponse,
    ScenarioReportModel,
    VerifyRequest,
    VerifyResponse,
)

app = FastAPI(
    title="loccalc",
    description="Exact fixed-point localization sums and residue cross-checks",
)


@app.exception_handler(ServiceError)
async def service_error_handler(_: Request, exc: ServiceError) -> JSONResponse:
    return JSONResponse(status_code=exc.status, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return handlers.handle_health()


@app.post("/bott", response_model=LocalizationResponse)
def bott(request: BottRequest) -> LocalizationResponse:
    return handlers.handle_bott(request)


@app.post("/cl", response_model=LocalizationResponse)
def carrell_liebermann(request: CarrellLiebermannRequest) -> LocalizationResponse:
    return handlers.handle_carrell_liebermann(request)


@app.post("/baumbott", response_model=LocalizationResponse)
def baum_bott(request: BaumBottRequest) -> LocalizationResponse:
    return handlers.handle_baum_bott(request)


@app.post("/residue", response_model=ResidueResponse)
def residue(request: ResidueRequest) -> ResidueResponse:
    return handlers.handle_residue(request)


@app.post("/dh", response_model=ScenarioReportModel)
def duistermaat_heckman() -> ScenarioReportModel:
    return handlers.handle_dh()


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    return handlers.handle_verify(request)


@app.post("/model/validate", response_model=ModelValidateResponse)
def model_validate(request: ModelDocumentRequest) -> ModelValidateResponse:
    return handlers.handle_model_validate(request)
