"""
Typed state passed between pipeline steps (kept simple for clarity).
"""
from typing import Any, Dict, List, Optional, TypedDict

import pandas as pd


class RunState(TypedDict, total=False):
    command: str                  # sweep | resonances | verify
    config: Any                   # SweepConfig
    settings: Dict[str, Any]      # load_settings() output
    workers: int
    out: Optional[str]            # output override (CLI --out)
    grid: List[float]
    rows: pd.DataFrame
    skipped: List[float]          # singular frequencies
    resonances: Any               # ResonanceReport
    verification: Any             # VerificationReport
    outputs: Dict[str, str]       # artifact name -> path written
    text: str                     # rendered CSV / table for stdout
    verify_freqs: int
