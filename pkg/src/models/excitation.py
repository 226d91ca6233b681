"""
Harmonic standing-wave surface excitation.

BVP1 prescribes on r = R
    sigma_rr = A sin(m theta) sin(K z) sin(w t)
    sigma_rt = B cos(m theta) sin(K z) sin(w t)
    sigma_rz = C sin(m theta) cos(K z) sin(w t)
and BVP2 swaps sin(m theta) <-> cos(m theta); K = k pi / L.
"""
from __future__ import annotations
import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class Bvp(str, Enum):
    BVP1 = "BVP1"
    BVP2 = "BVP2"

    @classmethod
    def parse(cls, value: object) -> "Bvp":
        if isinstance(value, Bvp):
            return value
        text = str(value).strip().upper()
        if text in ("1", "BVP1"):
            return cls.BVP1
        if text in ("2", "BVP2"):
            return cls.BVP2
        raise ValueError(f"bvp must be 1, 2, BVP1 or BVP2, got {value!r}")

    @property
    def third_column_sign(self) -> float:
        """Sign carried by the A3 (shear-potential) terms: -1 for BVP1, +1 for BVP2."""
        return -1.0 if self is Bvp.BVP1 else 1.0


class ExcitationSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    bvp: Bvp
    m: int = Field(ge=0, description="circumferential wave number")
    k: int = Field(ge=0, description="longitudinal wave number")
    omega: float = Field(gt=0, allow_inf_nan=False, description="angular frequency, rad/s")
    amp_a: float = Field(default=0.0, allow_inf_nan=False, description="sigma_rr amplitude, Pa")
    amp_b: float = Field(default=0.0, allow_inf_nan=False, description="sigma_rt amplitude, Pa")
    amp_c: float = Field(default=0.0, allow_inf_nan=False, description="sigma_rz amplitude, Pa")

    @property
    def frequency_hz(self) -> float:
        return self.omega / (2.0 * math.pi)

    @property
    def is_forced(self) -> bool:
        """
        True when an amplitude that can actually drive this (bvp, m) is non-zero.

        m = 0 BVP1 only responds to B; m = 0 BVP2 ignores B.
        """
        if self.m == 0 and self.bvp is Bvp.BVP1:
            return self.amp_b != 0.0
        if self.m == 0:
            return self.amp_a != 0.0 or self.amp_c != 0.0
        return any(a != 0.0 for a in (self.amp_a, self.amp_b, self.amp_c))

    def at_frequency(self, f_hz: float) -> "ExcitationSpec":
        return self.model_copy(update={"omega": omega_from_hz(f_hz)})

    def scaled(self, c: float) -> "ExcitationSpec":
        return self.model_copy(update={"amp_a": c * self.amp_a, "amp_b": c * self.amp_b, "amp_c": c * self.amp_c})


def omega_from_hz(f_hz: float) -> float:
    return 2.0 * math.pi * f_hz
