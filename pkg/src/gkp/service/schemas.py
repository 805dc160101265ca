"""Request/response models for the service endpoints.

Exact rationals travel as strings ("p/q" or "p"); triangles use the
interchange format {"params": [six strings], "rows": [["1"], ...]}.
"""
from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from ..params import InvolutionKind, ParamTuple
from ..rationals import to_fraction


def _parse_params(values) -> list:
    if len(values) != 6:
        raise ValueError("expected exactly 6 rationals (alpha,beta,gamma,alpha',beta',gamma')")
    return [str(to_fraction(v)) for v in values]


class ParamsRequest(BaseModel):
    params: list[str] = Field(description="(alpha, beta, gamma, alpha', beta', gamma') as 'p/q' strings")

    _check = field_validator("params", mode="before")(_parse_params)

    def tuple(self) -> ParamTuple:
        return ParamTuple.from_strings(self.params)


class ClassifyResponse(BaseModel):
    rec_type: str
    derived: dict | None = None  # r, rp, s, sp, sigma for Type I


class TriangleRequest(ParamsRequest):
    rows: int = Field(default=10, ge=0, le=500)


class TriangleResponse(BaseModel):
    params: list[str]
    rows: list[list[str]]


class RowPolyRequest(ParamsRequest):
    n: int = Field(ge=0, le=500)
    method: str = Field(default="recurrence", pattern="^(recurrence|product)$")


class RowPolyResponse(BaseModel):
    n: int
    method: str
    coeffs: list[str]


class EgfCheckRequest(ParamsRequest):
    x: str = Field(default="1/2", description="evaluation point, rational in (0,1) for Types I-III")
    order: int = Field(default=10, ge=0, le=200)
    format_field: str = Field(default="exact", alias="field", pattern="^(exact|float)$")
    tol: float = Field(default=1e-30, gt=0)

    model_config = {"populate_by_name": True}

    @field_validator("x")
    @classmethod
    def _rational(cls, v):
        return str(to_fraction(v))


class EgfCheckResponse(BaseModel):
    case: str
    matched: bool
    order: int
    x: str
    max_rel_err: str
    closed_coeffs: list[str]
    reference_coeffs: list[str]


class ResidueRequest(ParamsRequest):
    n: int = Field(ge=0, le=64)
    x: str = Field(default="1/2")
    precision: int = Field(default=60, ge=50)
    tol: float = Field(default=1e-30, gt=0)
    alternative: bool = Field(default=False, description="use the integer-r log-normalized form")

    @field_validator("x")
    @classmethod
    def _rational(cls, v):
        return str(to_fraction(v))


class ResidueResponse(BaseModel):
    n: int
    x: str
    value: str
    exact: str
    rel_err: str
    within_tol: bool
    error_estimate: str
    digits: int


class DegeneracyResponse(BaseModel):
    tag: str
    invariants: dict


class IdentifyRequest(BaseModel):
    rows: list[list[str]]

    @field_validator("rows")
    @classmethod
    def _rationals(cls, rows):
        return [[str(to_fraction(v)) for v in row] for row in rows]

    def fractions(self) -> list:
        return [[Fraction(v) for v in row] for row in self.rows]


class IdentifyResponse(BaseModel):
    particular: list[str]
    nullspace: list[list[str]]
    dim: int


class OeisVerifyRequest(ParamsRequest):
    anum: str = Field(pattern=r"^A\d{6}$")
    rows: int = Field(default=10, ge=0, le=200)
    offline: bool = False
    cache_dir: str | None = None


class OeisVerifyResponse(BaseModel):
    anum: str
    matched: bool
    rows_checked: int
    entries_checked: int
    first_mismatch: dict | None = None
    note: str = ""
    source: str


class InvoluteRequest(ParamsRequest):
    kind: str

    @field_validator("kind")
    @classmethod
    def _known(cls, v):
        InvolutionKind(v)
        return v


class InvoluteResponse(BaseModel):
    kind: str
    params: list[str]


class HealthResponse(BaseModel):
    status: str
    version: str
