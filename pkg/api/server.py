"""
FastAPI server exposing:
  GET  /health
  GET  /metrics       (Prometheus text)
  POST /classify      case split for one (m, k, f)
  POST /solve         amplitudes, determinant and fields at one point
  POST /sweep         bounded frequency sweep (same rows as the CLI CSV)
  POST /resonances    determinant sign-change roots matched to the natural-frequency table
"""
from __future__ import annotations
import math
import time
from typing import Any, Dict, Optional, Tuple

from fastapi import Body, FastAPI, HTTPException, Response

from api.metrics import metrics
from api.schemas import (
    ClassifyResponse, ExcitationIn, MaterialIn, ResonanceResponse, SolveRequest, SolveResponse,
    SweepRequest, SweepResponse,
)
from src.analysis.case_classifier import classify
from src.analysis.coefficient_solver import solve
from src.analysis.field_evaluator import Point, boundary_residual, stationary_displacement, stationary_stress
from src.core.config import SweepConfig, frequency_grid, resolve_material
from src.core.errors import ConfigError, CylRespError, DomainError, ResonanceError, SingularConfigurationError
from src.core.orchestrator import run_once
from src.models.excitation import ExcitationSpec, omega_from_hz
from src.models.material import MaterialGeometry
from src.utils.io import load_settings

MAX_SWEEP_POINTS = 20000

app = FastAPI(title="Cylinder Forced-Response Solver")


def _material(spec: MaterialIn) -> MaterialGeometry:
    overrides = {k: v for k, v in spec.model_dump(exclude={"preset"}).items() if v is not None}
    return resolve_material(spec.preset, overrides, load_settings()["materials"])


def _default_point(mg: MaterialGeometry, point: Optional[Tuple[float, float, float]]) -> Point:
    return Point(*point) if point is not None else Point(mg.radius / 2.0, 0.0, mg.length / 7.0)


def _finite_or_none(x: float) -> Optional[float]:
    return x if math.isfinite(x) else None


def _http_error(e: Exception) -> HTTPException:
    if isinstance(e, (ConfigError, DomainError)):
        return HTTPException(status_code=422, detail=str(e))
    if isinstance(e, (SingularConfigurationError, ResonanceError)):
        return HTTPException(status_code=409, detail=str(e))
    return HTTPException(status_code=500, detail=str(e))


@app.get("/health")
def health() -> Dict[str, Any]:
    return {"ok": True}

@app.get("/metrics")
def get_metrics():
    return Response(content=metrics.generate_prometheus_output(), media_type="text/plain")

@app.post("/classify", response_model=ClassifyResponse)
def classify_endpoint(req: ExcitationIn = Body(...)) -> Dict[str, Any]:
    try:
        mg = _material(req.material)
        cls = classify(mg, req.m, req.k, omega_from_hz(req.f_hz))
    except CylRespError as e:
        raise _http_error(e)
    return {
        "case": cls.case_id.value, "alpha1": cls.alpha1, "alpha2": cls.alpha2,
        "gamma1": cls.gamma1, "gamma2": _finite_or_none(cls.gamma2),
        "kappa": cls.kappa, "tau": cls.tau, "near_boundary": cls.near_boundary,
    }

@app.post("/solve", response_model=SolveResponse)
def solve_endpoint(req: SolveRequest = Body(...)) -> Dict[str, Any]:
    start = time.time()
    try:
        mg = _material(req.material)
        ex = ExcitationSpec(
            bvp=req.bvp, m=req.m, k=req.k, omega=omega_from_hz(req.f_hz),
            amp_a=req.amp_a_pa, amp_b=req.amp_b_pa, amp_c=req.amp_c_pa,
        )
        cls, sol = solve(ex, mg, method=req.method)
        p = _default_point(mg, req.point)
        u = stationary_displacement(sol, cls, ex, mg, p)
        s = stationary_stress(sol, cls, ex, mg, p)
        residual = boundary_residual(sol, cls, ex, mg)
    except CylRespError as e:
        raise _http_error(e)
    metrics.inc("solves_total", labels={"method": req.method})
    metrics.observe("solve_duration_seconds", time.time() - start)
    return {
        "case": cls.case_id.value, "amplitudes": list(sol.amplitudes), "determinant": sol.determinant,
        "scaled_determinant": sol.scaled_determinant, "quality": sol.quality,
        "displacement": u, "stress": s, "boundary_residual": residual,
    }

def _sweep_config(req: SweepRequest) -> SweepConfig:
    mg = _material(req.material)
    n = len(frequency_grid(req.f_start_hz, req.f_stop_hz, req.f_step_hz)) * len(req.k)
    if n > MAX_SWEEP_POINTS:
        raise ConfigError(f"grid has {n} points; the HTTP surface allows at most {MAX_SWEEP_POINTS}", key="f_step_hz")
    point = req.point or (mg.radius / 2.0, 0.0, mg.length / 7.0)
    _default_point(mg, point).check_inside(mg)
    return SweepConfig(
        bvp=req.bvp, m=req.m, k_values=tuple(req.k), f_start_hz=req.f_start_hz, f_stop_hz=req.f_stop_hz,
        f_step_hz=req.f_step_hz, point=point, amplitudes=(req.amp_a_pa, req.amp_b_pa, req.amp_c_pa), material=mg,
    )

@app.post("/sweep", response_model=SweepResponse)
def sweep_endpoint(req: SweepRequest = Body(...)) -> Dict[str, Any]:
    try:
        cfg = _sweep_config(req)
        frame = run_once(cfg, "sweep")["rows"]
    except CylRespError as e:
        raise _http_error(e)
    frame = frame.astype(object).where(frame.notna(), None)
    return {"columns": list(frame.columns), "rows": frame.values.tolist()}

@app.post("/resonances", response_model=ResonanceResponse)
def resonances_endpoint(req: SweepRequest = Body(...)) -> Dict[str, Any]:
    try:
        cfg = _sweep_config(req)
        report = run_once(cfg, "resonances")["resonances"]
    except CylRespError as e:
        raise _http_error(e)
    frame = report.to_frame()
    frame = frame.astype(object).where(frame.notna(), None)
    return {"bvp": report.bvp, "m": report.m, "resonances": frame.to_dict(orient="records")}
