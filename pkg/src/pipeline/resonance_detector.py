"""
ResonanceDetector
- Samples the boundary-system determinant over the grid for every configured k
- Bisects each sign change between same-case neighbours down to a 0.1 Hz bracket
- Splits neighbours on opposite sides of a case boundary at the boundary and
  searches each side separately; a side whose determinant cannot be evaluated
  is reported as a skipped bracket
- Tags every root with the nearest tabulated natural frequency of the same m
"""
from __future__ import annotations
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from src.analysis.case_classifier import case_boundaries_hz, classify
from src.analysis.coefficient_solver import system_determinant
from src.core.config import SweepConfig, frequency_grid
from src.core.errors import CylRespError
from src.models.natural_frequencies import NaturalFrequencyTable, load_bundled_natural_frequencies
from src.pipeline.base import Base
from src.pipeline.sweep_runner import solver_options
from src.utils.io import get_logger, load_settings

RESONANCE_COLUMNS = ["k", "f_hz", "bracket_lo_hz", "bracket_hi_hz", "case", "mode", "table_khz", "offset"]
BRACKET_WIDTH_HZ = 0.1
SKIPPED_COLUMNS = ["k", "lo_hz", "hi_hz", "reason"]
# distance kept from a case boundary, relative to the boundary frequency
BOUNDARY_OFFSET_REL = 1.0e-7

Bracket = Tuple[float, float, str]

log = get_logger(__name__)


@dataclass(frozen=True)
class ResonanceRecord:
    k: int
    f_hz: float
    bracket_lo_hz: float
    bracket_hi_hz: float
    case: str
    mode: Optional[int] = None
    table_khz: Optional[float] = None
    offset: Optional[float] = None


@dataclass(frozen=True)
class SkippedBracket:
    k: int
    lo_hz: float
    hi_hz: float
    reason: str


@dataclass
class ResonanceReport:
    bvp: str
    m: int
    records: List[ResonanceRecord] = field(default_factory=list)
    skipped: List[SkippedBracket] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def frequencies_hz(self) -> List[float]:
        return [r.f_hz for r in self.records]

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(r) for r in self.records], columns=RESONANCE_COLUMNS)
        return frame.astype({"k": "int64"}) if len(frame) else frame

    def skipped_frame(self) -> pd.DataFrame:
        return pd.DataFrame([asdict(s) for s in self.skipped], columns=SKIPPED_COLUMNS)

    def matched_modes(self, rel_tol: float = 0.02) -> List[int]:
        """Table modes of this m with at least one root within rel_tol (any k)."""
        return sorted({r.mode for r in self.records if r.mode is not None and abs(r.offset) <= rel_tol})


def sample_determinant(
    cfg: SweepConfig, k: int, grid: Sequence[float], settings: Dict[str, Any], workers: int = 1
) -> Tuple[List[str], np.ndarray]:
    """(case ids, determinants) over the grid; singular points carry NaN."""
    opts = solver_options(settings)

    def one(f_hz: float) -> Tuple[str, float]:
        ex = cfg.excitation(k, f_hz)
        cls = classify(cfg.material, cfg.m, k, ex.omega, opts["singular_rel_tol"], opts["near_rel_tol"])
        if cls.is_singular:
            return cls.case_id.value, math.nan
        return cls.case_id.value, system_determinant(cls, ex, cfg.material)

    values = [float(f) for f in grid]
    if workers <= 1:
        pairs = [one(f) for f in values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pairs = list(pool.map(one, values))
    return [c for c, _ in pairs], np.array([d for _, d in pairs], dtype=float)


def _determinant_fn(cfg: SweepConfig, k: int, settings: Dict[str, Any]):
    opts = solver_options(settings)

    def det(f_hz: float) -> float:
        ex = cfg.excitation(k, f_hz)
        cls = classify(cfg.material, cfg.m, k, ex.omega, opts["singular_rel_tol"], opts["near_rel_tol"])
        return system_determinant(cls, ex, cfg.material)
    return det


def _case_fn(cfg: SweepConfig, k: int, settings: Dict[str, Any]) -> Callable[[float], str]:
    opts = solver_options(settings)

    def case_of(f_hz: float) -> str:
        ex = cfg.excitation(k, f_hz)
        return classify(cfg.material, cfg.m, k, ex.omega, opts["singular_rel_tol"], opts["near_rel_tol"]).case_id.value
    return case_of


def brackets(grid: Sequence[float], cases: Sequence[str], dets: np.ndarray) -> List[Bracket]:
    """Adjacent grid pairs sharing a non-singular case whose determinants change sign."""
    out: List[Bracket] = []
    for i in range(len(grid) - 1):
        a, b = dets[i], dets[i + 1]
        if cases[i] != cases[i + 1] or not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a * b < 0.0:
            out.append((float(grid[i]), float(grid[i + 1]), cases[i]))
    return out


def straddling_pairs(cases: Sequence[str], dets: np.ndarray) -> List[int]:
    """Indices i where grid points i and i + 1 differ in case or one of them is singular."""
    return [
        i for i in range(len(cases) - 1)
        if cases[i] != cases[i + 1] or not (np.isfinite(dets[i]) and np.isfinite(dets[i + 1]))
    ]


def split_at_boundaries(
    lo: float,
    hi: float,
    det_lo: float,
    det_hi: float,
    boundaries: Sequence[float],
    det: Callable[[float], float],
    case_of: Callable[[float], str],
    rel_offset: float = BOUNDARY_OFFSET_REL,
) -> Tuple[List[Bracket], List[Tuple[float, float, str]]]:
    """
    Sign-change brackets inside [lo, hi] once every case boundary in it is cut out.

    Each side of a boundary is searched up to rel_offset * boundary of it, so every
    bracket lies within one case. Sides whose ends give no finite determinant come
    back as (lo, hi, reason).
    """
    # a grid point flagged singular sits within rel_offset of its boundary
    cuts = sorted(b for b in boundaries if lo * (1.0 - rel_offset) <= b <= hi * (1.0 + rel_offset))
    edges = [lo]
    for b in cuts:
        edges += [b * (1.0 - rel_offset), b * (1.0 + rel_offset)]
    edges.append(hi)

    found: List[Bracket] = []
    skipped: List[Tuple[float, float, str]] = []
    for x0, x1 in zip(edges[0::2], edges[1::2]):
        if x0 >= x1:
            continue
        d0 = det_lo if x0 == lo else _safe(det, x0)
        d1 = det_hi if x1 == hi else _safe(det, x1)
        if not (math.isfinite(d0) and math.isfinite(d1)):
            skipped.append((x0, x1, "non_finite_determinant"))
        elif d0 * d1 < 0.0:
            found.append((x0, x1, case_of(0.5 * (x0 + x1))))
    return found, skipped


def _safe(det: Callable[[float], float], f_hz: float) -> float:
    try:
        return float(det(f_hz))
    except CylRespError as e:
        log.debug("determinant unavailable at %.9g Hz: %s", f_hz, e)
        return math.nan


def detect_resonances(
    cfg: SweepConfig,
    grid: Optional[Sequence[float]] = None,
    table: Optional[NaturalFrequencyTable] = None,
    settings: Optional[Dict[str, Any]] = None,
    workers: Optional[int] = None,
) -> ResonanceReport:
    settings = settings if settings is not None else load_settings()
    workers = workers or int(settings.get("workers", 1))
    table = table if table is not None else load_bundled_natural_frequencies()
    if grid is None:
        grid = frequency_grid(cfg.f_start_hz, cfg.f_stop_hz, cfg.f_step_hz)
    rel_offset = max(BOUNDARY_OFFSET_REL, 10.0 * solver_options(settings)["singular_rel_tol"])

    report = ResonanceReport(bvp=cfg.bvp.value, m=cfg.m)
    for k in cfg.k_values:
        cases, dets = sample_determinant(cfg, k, grid, settings, workers)
        det = _determinant_fn(cfg, k, settings)
        found = brackets(grid, cases, dets)
        boundaries = case_boundaries_hz(cfg.material, k)
        case_of = _case_fn(cfg, k, settings)
        for i in straddling_pairs(cases, dets):
            sides, skipped = split_at_boundaries(
                float(grid[i]), float(grid[i + 1]), dets[i], dets[i + 1], boundaries, det, case_of, rel_offset
            )
            found += sides
            for lo, hi, reason in skipped:
                report.skipped.append(SkippedBracket(k, lo, hi, reason))
                log.warning("k=%d: no determinant on [%.6f, %.6f] Hz (%s); roots there are not searched", k, lo, hi, reason)

        for lo, hi, case in found:
            root = bisect(det, lo, hi, xtol=BRACKET_WIDTH_HZ)
            near = table.nearest(cfg.m, root)
            rec = ResonanceRecord(
                k=k, f_hz=float(root), bracket_lo_hz=lo, bracket_hi_hz=hi, case=case,
                mode=near.mode if near else None,
                table_khz=near.freq_khz if near else None,
                offset=near.offset if near else None,
            )
            report.records.append(rec)
            if near:
                log.info("resonance k=%d at %.3f Hz (%s), nearest table mode %d at %.3f kHz, offset %+.4f",
                         k, root, case, near.mode, near.freq_khz, near.offset)
            else:
                log.info("resonance k=%d at %.3f Hz (%s), no table entries for m=%d", k, root, case, cfg.m)
    report.records.sort(key=lambda r: (r.f_hz, r.k))
    return report


class ResonanceDetector(Base):
    def __init__(self, table: Optional[NaturalFrequencyTable] = None):
        super().__init__("resonance_detector")
        self.table = table

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        self.before_run(state)
        cfg: SweepConfig = state["config"]
        grid = frequency_grid(cfg.f_start_hz, cfg.f_stop_hz, cfg.f_step_hz)
        state["grid"] = grid.tolist()
        report = detect_resonances(cfg, grid, self.table, state.get("settings"), state.get("workers"))
        state["resonances"] = report
        self.log.info("%d resonances for %s m=%d over k=%s", len(report), cfg.bvp.value, cfg.m, list(cfg.k_values))
        self.after_run(state)
        return state
