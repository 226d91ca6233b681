# src/core/orchestrator.py
"""
Runs one command through its pipeline steps:

    sweep       SweepRunner -> ReportGenerator
    resonances  ResonanceDetector -> ReportGenerator
    verify      VerificationRunner -> ReportGenerator

Steps are plain callables over a shared RunState dict.
"""

from __future__ import annotations
from typing import Any, Callable, Dict, Optional
import time
from api.metrics import metrics

from src.core.config import SweepConfig
from src.core.router import plan_route
from src.core.state import RunState
from src.pipeline.report_generator import ReportGenerator
from src.pipeline.resonance_detector import ResonanceDetector
from src.pipeline.sweep_runner import SweepRunner
from src.utils.io import load_settings
from src.verification.suite import VerificationRunner

STEP_FACTORIES: Dict[str, Callable[[], Callable[[Dict[str, Any]], Dict[str, Any]]]] = {
    "sweep": SweepRunner,
    "resonances": ResonanceDetector,
    "verify": VerificationRunner,
    "report": ReportGenerator,
}


def _record_outcome(command: str, state: RunState) -> None:
    if command == "sweep":
        rows = state["rows"]
        metrics.inc("sweep_rows_total", len(rows))
        metrics.inc("singular_skips_total", len(state.get("skipped", [])))
        metrics.inc("resonance_errors_total", int((rows["status"] == "resonance").sum()))
    elif command == "resonances":
        metrics.inc("resonances_found_total", len(state["resonances"]))
    elif command == "verify" and not state["verification"].passed:
        metrics.inc("verification_failures_total")


def run_once(
    config: SweepConfig,
    command: str = "sweep",
    settings: Optional[Dict[str, Any]] = None,
    out: Optional[str] = None,
    workers: Optional[int] = None,
    extra: Optional[Dict[str, Any]] = None,
) -> RunState:
    """
    Run a single command. `out` overrides the config's output path; `workers`
    overrides the thread count from config/config.yaml; `extra` is merged
    into the initial state (e.g. verify_freqs).
    """
    settings = settings if settings is not None else load_settings()
    state: RunState = {
        "command": command,
        "config": config,
        "settings": settings,
        "workers": int(workers or settings.get("workers", 1)),
        "out": out,
        "outputs": {},
    }
    state.update(extra or {})
    steps = [STEP_FACTORIES[name]() for name in plan_route(command)]

    start_time = time.time()
    metrics.inc("pipeline_runs_total", labels={"command": command})
    try:
        for step in steps:
            state = step(state)
        _record_outcome(command, state)
        metrics.observe("pipeline_run_duration_seconds", time.time() - start_time, labels={"command": command})
        return state
    except Exception as e:
        metrics.inc("pipeline_errors_total", labels={"command": command})
        raise e
