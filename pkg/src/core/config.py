"""
Sweep configuration: the key=value file format and its validated model.

    # comments run to end of line
    bvp = 2
    m = 1
    k = 1              # or a list for `resonances`: k = 0,1,2,3,4,5
    f_start_hz = 10
    f_stop_hz = 100000
    f_step_hz = 10
    material = steel_table   # preset from config/config.yaml; explicit keys below override it
    amp_a_pa = 1e5

Unknown, duplicated or missing keys are ConfigErrors naming the key.
"""
from __future__ import annotations
import math
from typing import Any, Callable, Dict, Mapping, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.analysis.field_evaluator import Point
from src.core.errors import ConfigError
from src.models.excitation import Bvp, ExcitationSpec, omega_from_hz
from src.models.material import MaterialGeometry
from src.utils.io import get_logger, load_settings
from src.utils.parsing import iter_key_values

log = get_logger(__name__)

MATERIAL_KEYS = {
    "lambda_pa": "lam",
    "mu_pa": "mu",
    "rho": "rho",
    "length_m": "length",
    "radius_m": "radius",
}
REQUIRED_KEYS = ("bvp", "m", "k", "f_start_hz", "f_stop_hz")
OPTIONAL_KEYS = (
    "f_step_hz", "point_r", "point_theta", "point_z",
    "amp_a_pa", "amp_b_pa", "amp_c_pa", "material", "out",
)
KNOWN_KEYS = set(REQUIRED_KEYS) | set(OPTIONAL_KEYS) | set(MATERIAL_KEYS)


class SweepConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    bvp: Bvp
    m: int = Field(ge=0)
    k_values: Tuple[int, ...] = Field(min_length=1)
    f_start_hz: float = Field(gt=0, allow_inf_nan=False)
    f_stop_hz: float = Field(gt=0, allow_inf_nan=False)
    f_step_hz: float = Field(gt=0, allow_inf_nan=False)
    point: Tuple[float, float, float]
    amplitudes: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    material: MaterialGeometry
    out: Optional[str] = None

    @property
    def k(self) -> int:
        """The single longitudinal wave number a sweep runs at."""
        if len(self.k_values) != 1:
            raise ConfigError(f"a sweep needs exactly one k, got {list(self.k_values)}", key="k")
        return self.k_values[0]

    @property
    def sample_point(self) -> Point:
        return Point(*self.point)

    def require_forced(self) -> "SweepConfig":
        """Raise when no configured amplitude can drive (bvp, m); the response would be identically zero."""
        if not self.excitation(self.k_values[0], self.f_start_hz).is_forced:
            if self.m == 0 and self.bvp is Bvp.BVP1:
                raise ConfigError("m = 0 BVP1 is driven by sigma_rt only; set a non-zero amplitude", key="amp_b_pa")
            if self.m == 0:
                raise ConfigError("m = 0 BVP2 is driven by sigma_rr and sigma_rz; set a non-zero amplitude", key="amp_a_pa")
            raise ConfigError("all surface amplitudes are zero", key="amp_a_pa")
        return self

    def excitation(self, k: int, f_hz: float) -> ExcitationSpec:
        a, b, c = self.amplitudes
        return ExcitationSpec(bvp=self.bvp, m=self.m, k=k, omega=omega_from_hz(f_hz), amp_a=a, amp_b=b, amp_c=c)

    def with_step(self, step_hz: float) -> "SweepConfig":
        return self.model_copy(update={"f_step_hz": step_hz})


def frequency_grid(start_hz: float, stop_hz: float, step_hz: float) -> np.ndarray:
    """start + i*step for every i that keeps the value at or below stop (inclusive, round-off tolerant)."""
    if not (start_hz > 0 and step_hz > 0 and stop_hz >= start_hz):
        raise ConfigError(f"invalid frequency grid start={start_hz}, stop={stop_hz}, step={step_hz}")
    n = int(math.floor((stop_hz - start_hz) / step_hz + 1e-9)) + 1
    return start_hz + step_hz * np.arange(n, dtype=float)


def _to_float(key: str, value: str, line: int) -> float:
    try:
        x = float(value)
    except ValueError:
        raise ConfigError(f"expected a number, got {value!r}", key=key, line=line)
    if not math.isfinite(x):
        raise ConfigError(f"value must be finite, got {value!r}", key=key, line=line)
    return x


def _to_int(key: str, value: str, line: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"expected an integer, got {value!r}", key=key, line=line)


def _to_int_list(key: str, value: str, line: int) -> Tuple[int, ...]:
    parts = [p for p in value.replace(",", " ").split() if p]
    if not parts:
        raise ConfigError("expected at least one integer", key=key, line=line)
    return tuple(_to_int(key, p, line) for p in parts)


def _read_pairs(text: str) -> Dict[str, Tuple[int, str]]:
    seen: Dict[str, Tuple[int, str]] = {}
    try:
        for line, key, value in iter_key_values(text):
            if key not in KNOWN_KEYS:
                raise ConfigError("unknown key", key=key, line=line)
            if key in seen:
                raise ConfigError(f"duplicate key (first set on line {seen[key][0]})", key=key, line=line)
            if not value:
                raise ConfigError("empty value", key=key, line=line)
            seen[key] = (line, value)
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        msg, line = e.args if len(e.args) == 2 else (str(e), None)
        raise ConfigError(msg, line=line)
    return seen


def resolve_material(
    preset: Optional[str],
    overrides: Mapping[str, float],
    presets: Mapping[str, Any],
    line: Optional[int] = None,
) -> MaterialGeometry:
    """Preset values (if any) overlaid with explicit `lambda_pa`/`mu_pa`/... keys."""
    fields: Dict[str, float] = {}
    if preset is not None:
        if preset not in presets:
            raise ConfigError(f"unknown material preset {preset!r}; known: {sorted(presets)}", key="material", line=line)
        base = MaterialGeometry.from_preset(presets[preset])
        fields = {"lam": base.lam, "mu": base.mu, "rho": base.rho, "length": base.length, "radius": base.radius}
    for key, value in overrides.items():
        if value <= 0:
            raise ConfigError(f"must be positive, got {value!r}", key=key)
        fields[MATERIAL_KEYS[key]] = value
    missing = [key for key, attr in MATERIAL_KEYS.items() if attr not in fields]
    if missing:
        raise ConfigError("missing required key (or set `material = <preset>`)", key=missing[0])
    return MaterialGeometry(**fields)


def _material(pairs: Dict[str, Tuple[int, str]], presets: Mapping[str, Any]) -> MaterialGeometry:
    overrides: Dict[str, float] = {}
    for key in MATERIAL_KEYS:
        if key in pairs:
            line, value = pairs[key]
            x = _to_float(key, value, line)
            if x <= 0:
                raise ConfigError(f"must be positive, got {value!r}", key=key, line=line)
            overrides[key] = x
    line, preset = pairs.get("material", (None, None))
    return resolve_material(preset, overrides, presets, line)


def parse_config(text: str, presets: Optional[Mapping[str, Any]] = None) -> SweepConfig:
    pairs = _read_pairs(text)
    for key in REQUIRED_KEYS:
        if key not in pairs:
            raise ConfigError("missing required key", key=key)
    if presets is None:
        presets = load_settings()["materials"]

    def get(key: str, conv: Callable[[str, str, int], Any], default: Any = None) -> Any:
        if key not in pairs:
            return default
        line, value = pairs[key]
        return conv(key, value, line)

    def fail(key: str, message: str) -> ConfigError:
        return ConfigError(message, key=key, line=pairs[key][0] if key in pairs else None)

    line, bvp_text = pairs["bvp"]
    try:
        bvp = Bvp.parse(bvp_text)
    except ValueError as e:
        raise ConfigError(str(e), key="bvp", line=line)

    m = get("m", _to_int)
    if m < 0:
        raise fail("m", f"must be a non-negative integer, got {m}")
    k_values = get("k", _to_int_list)
    if any(k < 0 for k in k_values):
        raise fail("k", f"must be non-negative integers, got {list(k_values)}")
    if len(set(k_values)) != len(k_values):
        raise fail("k", f"repeated wave number in {list(k_values)}")

    f_start = get("f_start_hz", _to_float)
    f_stop = get("f_stop_hz", _to_float)
    f_step = get("f_step_hz", _to_float, load_settings()["step_hz"])
    if f_start <= 0:
        raise fail("f_start_hz", f"must be positive, got {f_start}")
    if f_stop < f_start:
        raise fail("f_stop_hz", f"must be >= f_start_hz ({f_start}), got {f_stop}")
    if f_step <= 0:
        raise fail("f_step_hz", f"must be positive, got {f_step}")

    material = _material(pairs, presets)
    point = (
        get("point_r", _to_float, material.radius / 2.0),
        get("point_theta", _to_float, 0.0),
        get("point_z", _to_float, material.length / 7.0),
    )
    if not 0.0 <= point[0] <= material.radius:
        raise fail("point_r", f"must lie in [0, R = {material.radius}], got {point[0]}")
    if not 0.0 <= point[2] <= material.length:
        raise fail("point_z", f"must lie in [0, L = {material.length}], got {point[2]}")
    amplitudes = tuple(get(key, _to_float, 0.0) for key in ("amp_a_pa", "amp_b_pa", "amp_c_pa"))
    out = pairs["out"][1] if "out" in pairs else None

    try:
        cfg = SweepConfig(
            bvp=bvp, m=m, k_values=k_values, f_start_hz=f_start, f_stop_hz=f_stop, f_step_hz=f_step,
            point=point, amplitudes=amplitudes, material=material, out=out,
        )
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(first.get("msg", str(e)), key=".".join(str(p) for p in first.get("loc", ())))
    log.debug("parsed config: %s m=%d k=%s %.6g..%.6g Hz step %.6g", bvp.value, m, list(k_values), f_start, f_stop, f_step)
    return cfg


def load_config_file(path: str, presets: Optional[Mapping[str, Any]] = None) -> SweepConfig:
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path!r}: {e.strerror or e}")
    return parse_config(text, presets)

