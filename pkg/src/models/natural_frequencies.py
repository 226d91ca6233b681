"""
Reference natural frequencies of the simply-supported cylinder (kHz), bundled
as data/natural_frequencies.csv with header `m,mode,freq_khz`.
"""
from __future__ import annotations
import io
import re
from dataclasses import dataclass, field
from typing import BinaryIO, Dict, List, Optional, Tuple, Union

import pandas as pd

from src.core.errors import ParseError, TableValidationError
from src.utils.io import repo_path

HEADER = ["m", "mode", "freq_khz"]
BUNDLED_PATH = "data/natural_frequencies.csv"
_PANDAS_LINE_RX = re.compile(r"line (\d+)")


@dataclass(frozen=True)
class NearestMode:
    mode: int
    freq_khz: float
    offset: float  # signed, (f - f_table) / f_table


@dataclass(frozen=True)
class NaturalFrequencyTable:
    entries: Dict[Tuple[int, int], float] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def orders(self) -> List[int]:
        return sorted({m for m, _ in self.entries})

    def frequencies_khz(self, m: int) -> List[float]:
        return [f for (mm, _), f in sorted(self.entries.items()) if mm == m]

    def nearest(self, m: int, f_hz: float) -> Optional[NearestMode]:
        candidates = [(mode, f) for (mm, mode), f in self.entries.items() if mm == m]
        if not candidates:
            return None
        mode, f_khz = min(candidates, key=lambda c: abs(c[1] * 1e3 - f_hz))
        table_hz = f_khz * 1e3
        return NearestMode(mode=mode, freq_khz=f_khz, offset=(f_hz - table_hz) / table_hz)


def _as_int(value: str, what: str, line: int) -> int:
    try:
        number = int(value)
    except (TypeError, ValueError):
        raise ParseError(f"{what} is not an integer: {value!r}", line=line)
    return number


def load_natural_frequencies(source: Union[bytes, BinaryIO]) -> NaturalFrequencyTable:
    raw = source if isinstance(source, bytes) else source.read()
    if not raw.strip():
        raise ParseError("empty stream, expected header 'm,mode,freq_khz'", line=1)
    try:
        df = pd.read_csv(io.BytesIO(raw), dtype=str, keep_default_na=False, skip_blank_lines=True)
    except pd.errors.ParserError as e:
        match = _PANDAS_LINE_RX.search(str(e))
        raise ParseError(f"malformed row ({e})", line=int(match.group(1)) if match else None)

    if [c.strip() for c in df.columns] != HEADER:
        raise ParseError(f"header must be {','.join(HEADER)}, got {','.join(map(str, df.columns))}", line=1)

    entries: Dict[Tuple[int, int], float] = {}
    for idx, row in enumerate(df.itertuples(index=False)):
        line = idx + 2
        m_txt, mode_txt, f_txt = (str(v).strip() for v in row)
        if not (m_txt and mode_txt and f_txt):
            raise ParseError("row has missing fields", line=line)
        m = _as_int(m_txt, "m", line)
        mode = _as_int(mode_txt, "mode", line)
        try:
            f_khz = float(f_txt)
        except ValueError:
            raise ParseError(f"freq_khz is not a number: {f_txt!r}", line=line)
        if m < 0 or mode < 1 or not f_khz > 0:
            raise ParseError(f"out-of-range row m={m}, mode={mode}, freq_khz={f_txt}", line=line)
        if (m, mode) in entries:
            raise TableValidationError(f"duplicate entry (m={m}, mode={mode}) at line {line}")
        entries[(m, mode)] = f_khz

    for m in {mm for mm, _ in entries}:
        modes = sorted(mode for mm, mode in entries if mm == m)
        freqs = [entries[(m, mode)] for mode in modes]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise TableValidationError(f"frequencies for m={m} are not strictly increasing in mode")
    return NaturalFrequencyTable(entries=entries)


def load_bundled_natural_frequencies() -> NaturalFrequencyTable:
    with open(repo_path(BUNDLED_PATH), "rb") as f:
        return load_natural_frequencies(f)
