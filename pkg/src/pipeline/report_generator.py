"""
ReportGenerator
- Renders sweep rows / resonance records as CSV (17 significant digits, empty cells for missing values, LF endings)
- Writes to the configured output path when one is set, otherwise leaves the text for stdout
- Renders the verification table
"""
# src/pipeline/report_generator.py
from __future__ import annotations
from typing import Any, Dict, Optional

import pandas as pd

from src.pipeline.base import Base
from src.utils.io import write_text

FLOAT_FORMAT = "%.17g"


def frame_to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")


class ReportGenerator(Base):
    def __init__(self):
        super().__init__("report_generator")

    def _target(self, state: Dict[str, Any]) -> Optional[str]:
        if state.get("out"):
            return state["out"]
        cfg = state.get("config")
        return getattr(cfg, "out", None)

    def __call__(self, state: Dict[str, Any]) -> Dict[str, Any]:
        self.before_run(state)
        outputs = state.setdefault("outputs", {})
        target = self._target(state)

        if "rows" in state:
            text = frame_to_csv(state["rows"])
            name = "sweep"
        elif "resonances" in state:
            text = frame_to_csv(state["resonances"].to_frame())
            name = "resonances"
        elif "verification" in state:
            text = state["verification"].format_table() + "\n"
            name = "verification"
        else:
            self.log.warning("nothing to report for command %s", state.get("command"))
            self.after_run(state)
            return state

        state["text"] = text
        if target and name != "verification":
            write_text(target, text)
            outputs[name] = target
            self.log.info("wrote %s to %s", name, target)

        self.after_run(state)
        return state
