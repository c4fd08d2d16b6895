"""HTTP service exposing coefficient computation, groupoid inspection,
species evaluation, and theorem verification.

All rationals cross the wire as exact `p/q` strings.  Errors carry a
machine-readable code: `usage` for parse/precondition problems and
`resource_limit` when a materialization would exceed the caps.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import groupoid, hyper, series, species
from .errors import (
    CompositionRequiresZeroConstant,
    CompositionRequiresZeroFree,
    ExprParseError,
    NonPositiveLowerParameter,
    OrderMismatch,
    RationalParseError,
    ResourceLimitExceeded,
    UnknownBuiltin,
)
from .rationals import format_rational, parse_rational

app = FastAPI(
    title="hyperspecies",
    description=(
        "Exact groupoid cardinality, species valuations, and combinatorial "
        "verification of hypergeometric coefficients"
    ),
)

_USAGE_ERRORS = (
    RationalParseError,
    ExprParseError,
    NonPositiveLowerParameter,
    UnknownBuiltin,
    CompositionRequiresZeroFree,
    CompositionRequiresZeroConstant,
    OrderMismatch,
    ValueError,
)


def _fail(code: str, message: str) -> None:
    raise HTTPException(status_code=400, detail={"code": code, "message": message})


class CoeffsRequest(BaseModel):
    upper: list[str] = []
    lower: list[str] = []
    order: int = Field(default=16, ge=0)
    basis: Literal["egf", "ordinary"] = "egf"


class CoeffsResponse(BaseModel):
    upper: list[str]
    lower: list[str]
    order: int
    basis: str
    coefficients: list[str]


class VerifyRequest(BaseModel):
    upper: list[str] = []
    lower: list[str] = []
    order: int = Field(default=16, ge=0)
    interpretation: Literal["product", "alt"] = "product"
    max_objects: int = Field(default=groupoid.DEFAULT_MAX_OBJECTS, ge=1)
    max_morphisms: int = Field(default=groupoid.DEFAULT_MAX_MORPHISMS, ge=1)
    max_compose: int = Field(default=groupoid.DEFAULT_MAX_COMPOSE, ge=1)


class VerifyEntryModel(BaseModel):
    n: int
    explicit: Optional[str]
    symbolic: str
    analytic: str
    ok: bool
    note: str = ""


class VerifyResponse(BaseModel):
    upper: list[str]
    lower: list[str]
    order: int
    interpretation: str
    verified: bool
    resource_limited: list[int]
    per_n: list[VerifyEntryModel]


class CardRequest(BaseModel):
    expression: str
    mode: Literal["symbolic", "explicit"] = "symbolic"
    max_objects: int = Field(default=groupoid.DEFAULT_MAX_OBJECTS, ge=1)
    max_morphisms: int = Field(default=groupoid.DEFAULT_MAX_MORPHISMS, ge=1)
    max_compose: int = Field(default=groupoid.DEFAULT_MAX_COMPOSE, ge=1)


class IsoClassModel(BaseModel):
    representative: str
    automorphism_order: int


class CardResponse(BaseModel):
    expression: str
    mode: str
    cardinality: str
    iso_class_count: Optional[int] = None
    classes: Optional[list[IsoClassModel]] = None


class SpeciesRequest(BaseModel):
    expression: str
    order: int = Field(default=16, ge=0)
    basis: Literal["egf", "ordinary"] = "egf"


class SpeciesResponse(BaseModel):
    expression: str
    order: int
    basis: str
    coefficients: list[str]


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/coeffs", response_model=CoeffsResponse)
def coeffs(request: CoeffsRequest) -> CoeffsResponse:
    try:
        upper = [parse_rational(s) for s in request.upper]
        lower = [parse_rational(s) for s in request.lower]
        result = series.hypergeometric_series(upper, lower, request.order)
        rendered = series.render(result, request.basis)
    except _USAGE_ERRORS as exc:
        _fail("usage", str(exc))
    return CoeffsResponse(
        upper=request.upper,
        lower=request.lower,
        order=request.order,
        basis=request.basis,
        coefficients=rendered,
    )


@app.post("/verify", response_model=VerifyResponse)
def verify(request: VerifyRequest) -> VerifyResponse:
    try:
        params = hyper.HyperParams.from_strings(request.upper, request.lower)
    except _USAGE_ERRORS as exc:
        _fail("usage", str(exc))
    interpretation = (
        "alternative" if request.interpretation == "alt" else "product"
    )
    report = hyper.verify_theorem(
        params,
        request.order,
        interpretation=interpretation,
        max_objects=request.max_objects,
        max_morphisms=request.max_morphisms,
        max_compose=request.max_compose,
    )
    per_n = [
        VerifyEntryModel(
            n=e.n,
            explicit=None if e.explicit is None else format_rational(e.explicit),
            symbolic=format_rational(e.symbolic),
            analytic=format_rational(e.analytic),
            ok=e.ok,
            note=e.note,
        )
        for e in report.entries
    ]
    return VerifyResponse(
        upper=request.upper,
        lower=request.lower,
        order=request.order,
        interpretation=request.interpretation,
        verified=report.passed,
        resource_limited=list(report.resource_limited),
        per_n=per_n,
    )


@app.post("/card", response_model=CardResponse)
def card(request: CardRequest) -> CardResponse:
    try:
        expr = groupoid.parse_groupoid_expr(request.expression)
    except _USAGE_ERRORS as exc:
        _fail("usage", str(exc))
    if request.mode == "symbolic":
        value = groupoid.cardinality_expr(expr)
        return CardResponse(
            expression=request.expression,
            mode=request.mode,
            cardinality=format_rational(value),
        )
    try:
        g = groupoid.realize(
            expr,
            max_objects=request.max_objects,
            max_morphisms=request.max_morphisms,
            max_compose=request.max_compose,
        )
    except ResourceLimitExceeded as exc:
        _fail("resource_limit", str(exc))
    report = groupoid.cardinality_explicit(g)
    return CardResponse(
        expression=request.expression,
        mode=request.mode,
        cardinality=format_rational(report.total),
        iso_class_count=report.iso_class_count,
        classes=[
            IsoClassModel(representative=repr(label), automorphism_order=order)
            for label, order in report.classes
        ],
    )


@app.post("/species", response_model=SpeciesResponse)
def species_endpoint(request: SpeciesRequest) -> SpeciesResponse:
    try:
        parsed = hyper.parse_species(request.expression)
        valuation = species.valuation(parsed, request.order)
        rendered = series.render(valuation, request.basis)
    except ResourceLimitExceeded as exc:
        _fail("resource_limit", str(exc))
    except _USAGE_ERRORS as exc:
        _fail("usage", str(exc))
    return SpeciesResponse(
        expression=request.expression,
        order=request.order,
        basis=request.basis,
        coefficients=rendered,
    )
