"""
SweepRunner
- Evaluates the stationary displacement at the configured point over a frequency grid
- One row per grid frequency; singular and resonant frequencies keep their row with a status marker
- Grid points are evaluated on a thread pool and merged back in grid order
"""
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from src.analysis.case_classifier import CaseId, classify
from src.analysis.coefficient_solver import assemble, solve_closed_form, solve_k0
from src.analysis.field_evaluator import boundary_residual, stationary_displacement
from src.core.config import SweepConfig, frequency_grid
from src.core.errors import ResonanceError
from src.pipeline.base import Base
from src.utils.io import get_logger, load_settings

SWEEP_COLUMNS = ["f_hz", "case", "u_r_m", "u_theta_m", "u_z_m", "det", "boundary_residual", "status"]

log = get_logger(__name__)


@dataclass(frozen=True)
class SweepRow:
    f_hz: float
    case: str
    u_r_m: Optional[float]
    u_theta_m: Optional[float]
    u_z_m: Optional[float]
    det: Optional[float]
    boundary_residual: Optional[float]
    status: str


def solver_options(settings: Dict[str, Any]) -> Dict[str, float]:
    return {
        "singular_rel_tol": settings.get("singular_rel_tol", 1.0e-9),
        "near_rel_tol": settings.get("near_boundary_rel_tol", 1.0e-6),
        "det_floor": settings.get("determinant_floor", 1.0e-300),
        "near_tol": settings.get("near_resonance_tol", 1.0e-8),
    }


def evaluate_frequency(cfg: SweepConfig, k: int, f_hz: float, settings: Dict[str, Any]) -> SweepRow:
    opts = solver_options(settings)
    mg = cfg.material
    ex = cfg.excitation(k, f_hz)
    cls = classify(mg, cfg.m, k, ex.omega, opts["singular_rel_tol"], opts["near_rel_tol"])
    if cls.is_singular:
        log.info("skipping singular frequency %.17g Hz (%s, k=%d)", f_hz, cls.case_id.value, k)
        return SweepRow(f_hz, cls.case_id.value, None, None, None, None, None, cls.case_id.value.lower())
    try:
        if cls.case_id is CaseId.KZERO:
            sol = solve_k0(ex, mg, cls, near_tol=opts["near_tol"])
        else:
            sol = solve_closed_form(assemble(cls, ex, mg), cls, ex, opts["det_floor"], opts["near_tol"])
    except ResonanceError as e:
        log.info("exact resonance at %.17g Hz (k=%d): %s", f_hz, k, e)
        return SweepRow(f_hz, cls.case_id.value, None, None, None, e.determinant, None, "resonance")
    u_r, u_t, u_z = stationary_displacement(sol, cls, ex, mg, cfg.sample_point)
    residual = boundary_residual(sol, cls, ex, mg, tuple(settings.get("boundary_grid", (6, 6))))
    return SweepRow(f_hz, cls.case_id.value, u_r, u_t, u_z, sol.determinant, residual, sol.quality)


def evaluate_grid(cfg: SweepConfig, k: int, grid: Sequence[float], settings: Dict[str, Any], workers: int = 1) -> List[SweepRow]:
    fn = partial(evaluate_frequency, cfg, k, settings=settings)
    if workers <= 1:
        return [fn(float(f)) for f in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map() yields in submission order
        return list(pool.map(fn, [float(f) for f in grid]))


def rows_to_frame(rows: Sequence[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([r.__dict__ for r in rows], columns=SWEEP_COLUMNS)


def run_sweep(cfg: SweepConfig, settings: Optional[Dict[str, Any]] = None, workers: Optional[int] = None) -> pd.DataFrame:
    settings = settings if settings is not None else load_settings()
    workers = workers or int(settings.get("workers", 1))
    grid = frequency_grid(cfg.f_start_hz, cfg.f_stop_hz, cfg.f_step_hz)
    rows = evaluate_grid(cfg, cfg.k, grid, settings, workers)
    frame = rows_to_frame(rows)
    n_singular = int(frame["status"].isin(["singular1", "singular2"]).sum())
    if n_singular:
        log.info("%d singular frequencies kept as marker rows", n_singular)
    return frame


class SweepRunner(Base):
    def __init__(self):
        super().__init__("sweep_runner")

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        self.before_run(state)
        cfg: SweepConfig = state["config"]
        frame = run_sweep(cfg, state.get("settings"), state.get("workers"))
        state["rows"] = frame
        state["grid"] = frame["f_hz"].tolist()
        state["skipped"] = frame.loc[frame["status"].isin(["singular1", "singular2"]), "f_hz"].tolist()
        self.log.info("swept %d frequencies (%s m=%d k=%d)", len(frame), cfg.bvp.value, cfg.m, cfg.k)
        self.after_run(state)
        return state
