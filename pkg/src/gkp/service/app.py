"""FastAPI application exposing the engine; the CLI is a thin client of it.

Run a server with:  uvicorn gkp.service.app:app
"""
from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException
from mpmath import mp, mpf

from .. import __version__
from ..egf import verify_egf
from ..degeneracy import degeneracy_class
from ..errors import GkpError, Infeasible, NotInFixtures, PrefixTooShallow
from ..exact import row_poly, row_poly_product_type_iv, triangle
from ..oeis import fetch, identify, layout_for, verify_against
from ..params import InvolutionKind, RecType, apply_involution, classify, derived_type_i
from ..rationals import rat_str
from ..residue import ResidueJob, row_poly_residue, row_poly_residue_alt
from . import schemas

app = FastAPI(
    title="gkp-triangles",
    description="Exact engine for the six-parameter GKP recurrence: triangles, "
    "EGF closed forms, residue row polynomials, degeneracies, OEIS checks.",
    version=__version__,
)


def _domain(exc: GkpError) -> HTTPException:
    return HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}")


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/classify", response_model=schemas.ClassifyResponse)
def classify_endpoint(req: schemas.ParamsRequest) -> schemas.ClassifyResponse:
    p = req.tuple()
    rec = classify(p)
    derived = None
    if rec is RecType.I:
        d = derived_type_i(p)
        derived = {
            "r": rat_str(d.r),
            "rp": rat_str(d.rp),
            "s": rat_str(d.s),
            "sp": rat_str(d.sp),
            "sigma": d.sigma,
        }
    return schemas.ClassifyResponse(rec_type=rec.value, derived=derived)


@app.post("/triangle", response_model=schemas.TriangleResponse)
def triangle_endpoint(req: schemas.TriangleRequest) -> schemas.TriangleResponse:
    t = triangle(req.tuple(), req.rows)
    data = t.to_json_dict()
    return schemas.TriangleResponse(params=data["params"], rows=data["rows"])


@app.post("/rowpoly", response_model=schemas.RowPolyResponse)
def rowpoly_endpoint(req: schemas.RowPolyRequest) -> schemas.RowPolyResponse:
    p = req.tuple()
    try:
        if req.method == "product":
            poly = row_poly_product_type_iv(p, req.n)
        else:
            poly = row_poly(triangle(p, req.n), req.n)
    except GkpError as exc:
        raise _domain(exc)
    return schemas.RowPolyResponse(n=req.n, method=req.method, coeffs=poly.to_strings())


@app.post("/egf-check", response_model=schemas.EgfCheckResponse)
def egf_check_endpoint(req: schemas.EgfCheckRequest) -> schemas.EgfCheckResponse:
    try:
        report = verify_egf(req.tuple(), Fraction(req.x), req.order, field=req.format_field, tol=req.tol)
    except GkpError as exc:
        raise _domain(exc)
    return schemas.EgfCheckResponse(
        case=report.case.value,
        matched=report.matched,
        order=report.order,
        x=rat_str(report.x0),
        max_rel_err=report.max_rel_err,
        closed_coeffs=report.closed_coeffs,
        reference_coeffs=report.reference_coeffs,
    )


@app.post("/residue", response_model=schemas.ResidueResponse)
def residue_endpoint(req: schemas.ResidueRequest) -> schemas.ResidueResponse:
    p = req.tuple()
    x0 = Fraction(req.x)
    job = ResidueJob(params=p, n=req.n, x0=x0, precision=req.precision)
    try:
        result = (row_poly_residue_alt if req.alternative else row_poly_residue)(job, tol=req.tol)
    except GkpError as exc:
        raise _domain(exc)
    exact = row_poly(triangle(p, req.n), req.n)(x0)
    with mp.workdps(2 * req.precision):
        ev = mpf(exact.numerator) / exact.denominator
        rel = abs(result.as_mpf() - ev) / max(1, abs(ev))
        within = bool(rel < mpf(req.tol))
        rel_str = mp.nstr(rel, 5)
    return schemas.ResidueResponse(
        n=req.n,
        x=req.x,
        value=result.value,
        exact=rat_str(exact),
        rel_err=rel_str,
        within_tol=within,
        error_estimate=result.error_estimate,
        digits=result.digits,
    )


@app.post("/degeneracy", response_model=schemas.DegeneracyResponse)
def degeneracy_endpoint(req: schemas.ParamsRequest) -> schemas.DegeneracyResponse:
    c = degeneracy_class(req.tuple())
    data = c.to_json_dict()
    return schemas.DegeneracyResponse(tag=data["tag"], invariants=data["invariants"])


@app.post("/identify", response_model=schemas.IdentifyResponse)
def identify_endpoint(req: schemas.IdentifyRequest) -> schemas.IdentifyResponse:
    try:
        fam = identify(req.fractions())
    except (Infeasible, PrefixTooShallow) as exc:
        raise _domain(exc)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    data = fam.to_json_dict()
    return schemas.IdentifyResponse(**data)


@app.post("/oeis-verify", response_model=schemas.OeisVerifyResponse)
def oeis_verify_endpoint(req: schemas.OeisVerifyRequest) -> schemas.OeisVerifyResponse:
    try:
        entry = fetch(req.anum, cache_dir=req.cache_dir, offline=req.offline)
    except NotInFixtures as exc:
        raise HTTPException(status_code=404, detail=f"NotInFixtures: {exc}")
    except GkpError as exc:
        raise _domain(exc)
    report = verify_against(req.tuple(), entry, layout_for(req.anum), req.rows)
    return schemas.OeisVerifyResponse(source=entry.source, **report.to_json_dict())


@app.post("/involute", response_model=schemas.InvoluteResponse)
def involute_endpoint(req: schemas.InvoluteRequest) -> schemas.InvoluteResponse:
    out = apply_involution(InvolutionKind(req.kind), req.tuple())
    return schemas.InvoluteResponse(kind=req.kind, params=out.to_strings())
