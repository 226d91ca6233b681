"""
Config + logging helpers and simple file IO.
"""
from __future__ import annotations
from typing import Dict, Any, List
import os
import yaml
import logging
import logging.config

CONFIG_PATH = "config/config.yaml"
LOGGING_PATH = "config/logging.yaml"


def repo_path(*parts: str) -> str:
    """Absolute path inside the repository, independent of the working directory."""
    root = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", ".."))
    return os.path.join(root, *parts)


def load_yaml(path: str) -> Dict[str, Any]:
    if not os.path.exists(path):
        return {}
    with open(path, "r") as f:
        return yaml.safe_load(f) or {}


def setup_logging() -> None:
    path = repo_path(LOGGING_PATH)
    if os.path.exists(path):
        with open(path, "r") as f:
            cfg = yaml.safe_load(f)
        logging.config.dictConfig(cfg)
    else:
        logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    level = os.environ.get("CYLRESP_LOG_LEVEL")
    if level:
        logging.getLogger().setLevel(level.upper())


def get_logger(name: str) -> logging.Logger:
    if not logging.getLogger().handlers:
        setup_logging()
    return logging.getLogger(name)


def ensure_dir(path: str) -> None:
    if path:
        os.makedirs(path, exist_ok=True)


def write_text(path: str, text: str) -> None:
    ensure_dir(os.path.dirname(path))
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def _parse_grid(value: str) -> List[int]:
    parts = [p.strip() for p in value.replace("x", ",").split(",") if p.strip()]
    return [int(p) for p in parts]


def load_settings() -> Dict[str, Any]:
    from dotenv import load_dotenv
    # Try loading from env_var or .env
    load_dotenv("env_var")
    load_dotenv(".env")

    cfg = load_yaml(repo_path(CONFIG_PATH))
    run = cfg.get("runtime", {}) or {}
    solver = cfg.get("solver", {}) or {}
    sweep = cfg.get("sweep", {}) or {}
    # env overrides (optional)
    if "CYLRESP_WORKERS" in os.environ:
        run["workers"] = int(os.environ["CYLRESP_WORKERS"])
    if "CYLRESP_BOUNDARY_GRID" in os.environ:
        run["boundary_grid"] = _parse_grid(os.environ["CYLRESP_BOUNDARY_GRID"])

    return {
        "workers": int(run.get("workers", 1)),
        "boundary_grid": tuple(run.get("boundary_grid", [6, 6])),
        "determinant_floor": float(solver.get("determinant_floor", 1.0e-300)),
        "near_resonance_tol": float(solver.get("near_resonance_tol", 1.0e-8)),
        "singular_rel_tol": float(solver.get("singular_rel_tol", 1.0e-9)),
        "near_boundary_rel_tol": float(solver.get("near_boundary_rel_tol", 1.0e-6)),
        "step_hz": float(sweep.get("step_hz", 10.0)),
        "fine_step_hz": float(sweep.get("fine_step_hz", 0.1)),
        "amplitude_pa": float(sweep.get("amplitude_pa", 1.0e5)),
        "materials": cfg.get("materials", {}) or {},
    }
