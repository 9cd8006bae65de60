"""FastAPI service exposing the toolkit as stateless JSON endpoints.

Every endpoint is a pure function of its request body, so responses are
deterministic and safe to evaluate concurrently. Domain failures surface as
HTTP 422 with a flat error object {code, module, message, location?};
malformed request bodies use the same shape under code "invalid_request".
"""

from __future__ import annotations

import csv
import io
import math

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import accounting, calibrate, model, panel, simulate
from ..errors import DomainError, ServiceError
from . import schemas


def _year_range(m: schemas.YearRangeModel | None) -> panel.YearRange | None:
    return None if m is None else panel.YearRange(m.start, m.end)


def _alpha_spec(req: schemas.AccountRequest, p: panel.MacroPanel) -> accounting.AlphaSpec:
    if req.alpha is not None:
        return accounting.AlphaSpec(value=req.alpha)
    if req.alpha_from_labor_share or p.labor_share is not None:
        return accounting.AlphaSpec(
            from_labor_share=True, window=_year_range(req.alpha_window)
        )
    raise ServiceError(
        "missing_alpha",
        "no capital share: pass alpha explicitly or supply a labor_share column",
    )


def _parse_scenarios_csv(text: str) -> list[tuple[float, float]]:
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise ServiceError("bad_scenarios_csv", "no scenario rows found")
    header = [cell.strip() for cell in rows[0]]
    if "beta" not in header or "gamma" not in header:
        raise ServiceError("bad_scenarios_csv", "scenario CSV needs beta and gamma columns")
    bi, gi = header.index("beta"), header.index("gamma")
    scenarios = []
    for lineno, row in enumerate(rows[1:], start=2):
        try:
            beta, gamma = float(row[bi]), float(row[gi])
        except (ValueError, IndexError):
            raise ServiceError(
                "bad_scenarios_csv",
                f"row {lineno} has no numeric beta/gamma pair",
                location={"row": lineno},
            ) from None
        if not (math.isfinite(beta) and math.isfinite(gamma)):
            raise ServiceError(
                "bad_scenarios_csv",
                f"row {lineno} has a non-finite beta/gamma value",
                location={"row": lineno},
            )
        scenarios.append((beta, gamma))
    if not scenarios:
        raise ServiceError("bad_scenarios_csv", "scenario CSV has a header but no rows")
    return scenarios


def create_app() -> FastAPI:
    from .. import __version__

    app = FastAPI(
        title="growthkit",
        version=__version__,
        description="Growth accounting, steady-state calibration, and transition simulation.",
    )

    @app.exception_handler(DomainError)
    async def domain_error_handler(request: Request, exc: DomainError):
        return JSONResponse(status_code=422, content=exc.to_dict())

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        details = [
            {"loc": [str(part) for part in err.get("loc", [])], "msg": err.get("msg", "")}
            for err in exc.errors()
        ]
        message = "; ".join(
            f"{'/'.join(d['loc']) or 'body'}: {d['msg']}" for d in details
        ) or "invalid request body"
        body = schemas.ErrorObject(
            code="invalid_request",
            module="service",
            message=message,
            location={"errors": details},
        )
        return JSONResponse(status_code=422, content=body.model_dump())

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post(
        "/v1/account",
        response_model=list[schemas.AccountRow],
        response_model_exclude_none=True,
    )
    async def account(req: schemas.AccountRequest):
        p = panel.parse_panel(req.csv_text)
        windows = [_year_range(w) for w in req.windows] if req.windows else [p.span]
        spec = _alpha_spec(req, p)
        rows = accounting.accounting_table(p, spec, windows)
        return [
            schemas.AccountRow(
                start=row.range.start,
                end=row.range.end,
                growth=row.growth,
                capital=row.contrib_capital,
                labor=row.contrib_labor,
                tfp=row.contrib_tfp,
                growth_pct=math.expm1(row.growth) if req.percent else None,
            )
            for row in rows
        ]

    @app.post("/v1/stats", response_model=list[schemas.WindowStatsRow])
    async def stats(req: schemas.StatsRequest):
        p = panel.parse_panel(req.csv_text)
        windows = [_year_range(w) for w in req.windows]
        results = panel.window_stats(p.years, p.series(req.series), windows)
        return [
            schemas.WindowStatsRow(
                start=r.range.start, end=r.range.end, mean=r.mean, std=r.std
            )
            for r in results
        ]

    @app.post("/v1/window", response_model=list[schemas.SteadyWindowRow])
    async def window(req: schemas.WindowRequest):
        p = panel.parse_panel(req.csv_text)
        found = panel.select_steady_window(p, min_len=req.min_len, tol=req.tol)
        return [
            schemas.SteadyWindowRow(
                start=w.start,
                end=w.end,
                length=w.length,
                mean_gap=panel.mean_growth_gap(p, w),
            )
            for w in found
        ]

    @app.post("/v1/steady-state", response_model=schemas.SteadyStateResponse)
    async def steady_state(req: schemas.SteadyStateRequest):
        a, n = req.trend_rates()
        params = model.ModelParams(
            alpha=req.alpha, beta=req.beta, gamma=req.gamma, delta=req.delta, a=a, n=n
        )
        ss = model.steady_state_k(params)
        return schemas.SteadyStateResponse(g=ss.g, k_bar=ss.k_bar, ky=ss.ky, iy=ss.iy)

    @app.post("/v1/calibrate", response_model=schemas.CalibrateResponse)
    async def calibrate_endpoint(req: schemas.CalibrateRequest):
        a, n = req.trend_rates()
        g = model.bgp_growth(a, n, req.alpha)
        if req.csv_text is not None:
            p = panel.parse_panel(req.csv_text)
            targets = calibrate.moments(p, _year_range(req.window))
        else:
            targets = calibrate.MomentTargets(iy_target=req.iy, ky_target=req.ky)
        grid = calibrate.GridSpec(
            beta_min=req.beta_min,
            beta_max=req.beta_max,
            beta_step=req.beta_step,
            gamma_min=req.gamma_min,
            gamma_max=req.gamma_max,
            gamma_step=req.gamma_step,
        )
        result = calibrate.grid_search(
            targets, grid, alpha=req.alpha, delta=req.delta, g=g, weights=(req.w_iy, req.w_ky)
        )
        ss = result.steady_state
        return schemas.CalibrateResponse(
            beta=result.beta,
            gamma=result.gamma,
            objective=result.objective,
            implied_iy=result.implied_iy,
            implied_ky=result.implied_ky,
            g=ss.g,
            k_bar=ss.k_bar,
            ky=ss.ky,
            iy=ss.iy,
            infeasible_count=result.infeasible_count,
        )

    @app.post(
        "/v1/scenarios",
        response_model=list[schemas.ScenarioRowModel],
        response_model_exclude_none=True,
    )
    async def scenarios(req: schemas.ScenariosRequest):
        a, n = req.trend_rates()
        g = model.bgp_growth(a, n, req.alpha)
        rows = calibrate.scenario_table(
            _parse_scenarios_csv(req.scenarios_csv), alpha=req.alpha, delta=req.delta, g=g
        )
        return [
            schemas.ScenarioRowModel(
                beta=r.beta, gamma=r.gamma, ky=r.ky, iy=r.iy, k_bar=r.k_bar, error=r.error
            )
            for r in rows
        ]

    @app.post(
        "/v1/simulate",
        response_model=schemas.SimulateResponse,
        response_model_exclude_none=True,
    )
    async def simulate_endpoint(req: schemas.SimulateRequest):
        a, n = req.trend_rates()
        params = model.ModelParams(
            alpha=req.alpha, beta=req.beta, gamma=req.gamma, delta=req.delta, a=a, n=n
        )
        k0 = req.k0
        if k0 is None:
            k0 = req.k0_mult * model.steady_state_k(params).k_bar
        path = simulate.simulate_transition(k0, params, T=req.horizon, tol=req.tol)
        T = path.horizon
        rows = []
        for t in range(T + 1):
            rows.append(
                schemas.PathRow(
                    t=t,
                    k=float(path.k[t]),
                    c=float(path.c[t]) if t < T else None,
                    y=float(path.y[t]),
                    i=float(path.i[t]) if t < T else None,
                    euler_gap=float(path.euler_gaps[t]) if t < T - 1 else None,
                )
            )
        return schemas.SimulateResponse(
            converged=path.converged,
            terminal_error=path.terminal_error,
            k_bar=path.k_bar,
            horizon=T,
            rows=rows,
        )

    return app


app = create_app()
