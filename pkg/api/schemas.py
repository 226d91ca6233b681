from __future__ import annotations
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from src.models.excitation import Bvp

class MaterialIn(BaseModel):
    preset: Optional[str] = Field(default=None, description="Named preset from config/config.yaml")
    lambda_pa: Optional[float] = Field(default=None, gt=0)
    mu_pa: Optional[float] = Field(default=None, gt=0)
    rho: Optional[float] = Field(default=None, gt=0)
    length_m: Optional[float] = Field(default=None, gt=0)
    radius_m: Optional[float] = Field(default=None, gt=0)

class ExcitationIn(BaseModel):
    bvp: Bvp = Bvp.BVP2
    m: int = Field(default=1, ge=0)
    k: int = Field(default=1, ge=0)
    f_hz: float = Field(gt=0)
    amp_a_pa: float = 0.0
    amp_b_pa: float = 0.0
    amp_c_pa: float = 0.0
    material: MaterialIn = Field(default_factory=lambda: MaterialIn(preset="steel_table"))

class ClassifyResponse(BaseModel):
    case: str
    alpha1: float
    alpha2: float
    gamma1: float
    gamma2: Optional[float]
    kappa: float
    tau: float
    near_boundary: bool

class SolveRequest(ExcitationIn):
    point: Optional[Tuple[float, float, float]] = Field(default=None, description="(r, theta, z); defaults to (R/2, 0, L/7)")
    method: str = Field(default="closed_form", pattern="^(closed_form|generic)$")

class SolveResponse(BaseModel):
    case: str
    amplitudes: List[float]
    determinant: float
    scaled_determinant: float
    quality: str
    displacement: Tuple[float, float, float]
    stress: Tuple[float, float, float, float, float, float]
    boundary_residual: float

class SweepRequest(BaseModel):
    bvp: Bvp = Bvp.BVP2
    m: int = Field(default=1, ge=0)
    k: List[int] = Field(default_factory=lambda: [1], min_length=1)
    f_start_hz: float = Field(gt=0)
    f_stop_hz: float = Field(gt=0)
    f_step_hz: float = Field(default=10.0, gt=0)
    point: Optional[Tuple[float, float, float]] = None
    amp_a_pa: float = 0.0
    amp_b_pa: float = 0.0
    amp_c_pa: float = 0.0
    material: MaterialIn = Field(default_factory=lambda: MaterialIn(preset="steel_table"))

class SweepResponse(BaseModel):
    columns: List[str]
    rows: List[List[Optional[Union[float, str]]]]

class ResonanceResponse(BaseModel):
    bvp: str
    m: int
    resonances: List[dict]
