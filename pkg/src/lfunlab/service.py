"""FastAPI service exposing the laboratory.

Every computation the package offers is reachable as a POST endpoint with a
pydantic request model; the CLI is a thin client over these endpoints (run
in-process by default).  Domain and budget refusals surface as HTTP 400;
a verification that RAN but found a counterexample is a 200 with
passed=false, since that is a result, not a transport failure.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .algebra import DomainError, FieldParams, format_poly, parse_poly
from .checks import run_target
from .euler import constants, make_context, predict_moment
from .lfun import central_value, l_coeffs_charsum
from .moments import BudgetError, MomentReport, residual_report
from .serialize import breakdown_view, frac_str, moment_report_view, qsqrt_view

app = FastAPI(title="lfunlab", version=__version__)


class LValueRequest(BaseModel):
    q: int = 5
    d: str = Field(description="monic square-free D, comma-separated ascending coefficients")


class LValueResponse(BaseModel):
    q: int
    d: str
    coeffs: list[int]
    lam: int = Field(serialization_alias="lambda")
    delta: int
    completed: list[int]
    central: dict


class PredictRequest(BaseModel):
    q: int = 5
    g: int
    cutoff_degree: int = 64
    sign_toggle: int = 1


class ConstantsRequest(BaseModel):
    q: int = 5
    cutoff_degree: int = 64


class MomentRequest(BaseModel):
    q: int = 5
    g: int
    method: str | None = None
    workers: int = 1
    cutoff_degree: int = 64
    max_cost_seconds: float | None = 900.0


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    q: int = 5
    target: str
    max_fdeg: int | None = None
    genera: list[int] | None = None
    nz: int | None = None
    nw: int | None = None
    t_max: int | None = None
    g_max: int | None = None
    samples: list[float] | None = None
    cutoff_degree: int | None = None
    tol: float | None = None


class VerifyResponse(BaseModel):
    model_config = ConfigDict(extra="allow")

    target: str
    q: int
    passed: bool


class ReportRequest(BaseModel):
    q: int = 5
    g_max: int = 2
    workers: int = 1
    cutoff_degree: int = 64
    max_cost_seconds: float | None = 900.0


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=400, detail=str(exc))


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/lvalue", response_model=LValueResponse)
def lvalue(req: LValueRequest) -> LValueResponse:
    try:
        FieldParams(req.q)
        d_poly = parse_poly(req.d, req.q)
        ldata = l_coeffs_charsum(d_poly, req.q, check_vanishing=len(d_poly) <= 5)
    except DomainError as exc:
        raise _bad_request(exc) from exc
    return LValueResponse(
        q=req.q,
        d=format_poly(d_poly),
        coeffs=list(ldata.c),
        lam=ldata.lam,
        delta=ldata.delta,
        completed=list(ldata.a),
        central=qsqrt_view(central_value(ldata)),
    )


@app.post("/predict")
def predict(req: PredictRequest) -> dict:
    try:
        FieldParams(req.q)
        ctx = make_context(req.q, req.cutoff_degree)
        bd = predict_moment(ctx, req.g, req.sign_toggle)
    except DomainError as exc:
        raise _bad_request(exc) from exc
    return breakdown_view(bd)


@app.post("/constants")
def constants_endpoint(req: ConstantsRequest) -> dict:
    try:
        FieldParams(req.q)
        ctx = make_context(req.q, req.cutoff_degree)
        cons = constants(ctx)
    except DomainError as exc:
        raise _bad_request(exc) from exc
    from .euler import zeta_A_exact, zeta_A_half

    z2 = zeta_A_exact(req.q, 2)
    return {
        "q": req.q,
        "cutoff_degree": req.cutoff_degree,
        **cons,
        "zetaA_half": qsqrt_view(zeta_A_half(req.q)),
        "zetaA_2": frac_str(z2),
        "zetaA_2_float": float(z2),
    }


@app.post("/moment")
def moment(req: MomentRequest) -> dict:
    try:
        ctx = make_context(req.q, req.cutoff_degree)
        rep: MomentReport = residual_report(
            req.q,
            req.g,
            ctx=ctx,
            method=req.method,
            workers=req.workers,
            max_cost_seconds=req.max_cost_seconds,
        )
    except (DomainError, BudgetError) as exc:
        raise _bad_request(exc) from exc
    return moment_report_view(rep, timings=True)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    kwargs = {}
    if req.max_fdeg is not None:
        kwargs["max_fdeg"] = req.max_fdeg
    if req.genera is not None:
        kwargs["genera"] = tuple(req.genera)
    if req.nz is not None:
        kwargs["nz"] = req.nz
    if req.nw is not None:
        kwargs["nw"] = req.nw
    if req.t_max is not None:
        kwargs["t_max"] = req.t_max
    if req.g_max is not None:
        kwargs["g_max"] = req.g_max
    if req.samples is not None:
        kwargs["samples"] = tuple(req.samples)
    if req.cutoff_degree is not None:
        kwargs["cutoff"] = req.cutoff_degree
    if req.tol is not None:
        kwargs["tol"] = req.tol
    try:
        report = run_target(req.target, req.q, **kwargs)
    except (DomainError, TypeError) as exc:
        raise _bad_request(exc) from exc
    return VerifyResponse(**report)


@app.post("/report")
def report(req: ReportRequest) -> dict:
    try:
        ctx = make_context(req.q, req.cutoff_degree)
        reports = [
            moment_report_view(
                residual_report(
                    req.q,
                    g,
                    ctx=ctx,
                    workers=req.workers,
                    max_cost_seconds=req.max_cost_seconds,
                ),
                timings=True,
            )
            for g in range(0, req.g_max + 1)
        ]
    except (DomainError, BudgetError) as exc:
        raise _bad_request(exc) from exc
    toggles = {r["sign_resolution"] for r in reports if r["g"] >= 1}
    return {
        "q": req.q,
        "g_max": req.g_max,
        "cutoff_degree": req.cutoff_degree,
        "workers": req.workers,
        "version": __version__,
        "reports": reports,
        "sign_resolution_consistent": len(toggles) <= 1,
        "sign_resolution": toggles.pop() if len(toggles) == 1 else None,
    }
