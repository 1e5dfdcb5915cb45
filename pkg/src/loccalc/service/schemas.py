"""Request/response models for the calculator service.

The same models back the HTTP API and the command-line client, so every
surface speaks one schema.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class ModelSource(BaseModel):
    """Where the fixed-point model comes from: an inline model document, a
    built-in projective space (optionally with explicit weights), or a
    product of symbolic projective spaces."""

    pn: Optional[int] = Field(default=None, ge=1, description="projective space dimension")
    weights: Optional[str] = Field(default=None,
                                   description="comma-separated weight expressions")
    product: Optional[list[int]] = Field(default=None,
                                         description="dimensions of projective factors")
    model: Optional[dict] = Field(default=None, description="inline model document")


class BottRequest(BaseModel):
    source: ModelSource
    phi: str = Field(description="integrand in the classes c1..cn")


class CarrellLiebermannRequest(BaseModel):
    source: ModelSource
    p: str = Field(description="integrand in the bundle classes c1..cr")
    twist: int = Field(default=1, description="scale line weights by this degree")


class BaumBottRequest(BaseModel):
    p1_roots: Optional[str] = Field(
        default=None, description="comma-separated rational roots of a factored field")
    p2_twist: Optional[int] = Field(default=None, description="plane family twist degree")
    p2_rhos: Optional[str] = Field(
        default=None, description="comma-separated root parameters for the plane family")
    model: Optional[dict] = Field(default=None, description="inline model document")
    phi: str = Field(description="integrand in the virtual classes c1..cn")


class PointValue(BaseModel):
    point: str
    value: str


class LocalizationResponse(BaseModel):
    value: str
    value_float: Optional[float] = None
    is_constant: bool
    per_point: list[PointValue]
    tau_exponent: int
    t_exponent: int


class ResidueRequest(BaseModel):
    dim: int = Field(ge=1, le=3)
    components: list[str]
    numerator: str = "1"
    center: Optional[list[str]] = None
    radius: float = 0.5
    samples: int = 256


class ResidueResponse(BaseModel):
    value_re: float
    value_im: float
    formatted: str


class ScenarioReportModel(BaseModel):
    name: str
    lhs: float
    rhs: float
    abs_error: float
    status: str
    tolerance: float
    details: dict


class VerifyRequest(BaseModel):
    scenarios: Optional[list[str]] = None


class VerifyResponse(BaseModel):
    reports: list[ScenarioReportModel]
    all_passed: bool


class ModelDocumentRequest(BaseModel):
    model: dict


class ModelValidateResponse(BaseModel):
    valid: bool
    dim: int
    rank: int
    points: int
    degenerate: list[str]
    warnings: list[str]
    canonical: dict


class HealthResponse(BaseModel):
    status: str
    version: str
