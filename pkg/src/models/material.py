"""
Physical configuration of the cylinder: Lamé constants, density and geometry (SI).
"""
from __future__ import annotations
import math
from typing import Any, Dict, Mapping, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import DomainError
from src.utils.validation import ensure_finite


class MaterialGeometry(BaseModel):
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(gt=0, allow_inf_nan=False, alias="lambda", description="First Lamé constant, Pa")
    mu: float = Field(gt=0, allow_inf_nan=False, description="Shear modulus, Pa")
    rho: float = Field(gt=0, allow_inf_nan=False, description="Mass density, kg/m^3")
    length: float = Field(gt=0, allow_inf_nan=False, description="Cylinder length L, m")
    radius: float = Field(gt=0, allow_inf_nan=False, description="Cylinder radius R, m")

    @property
    def p_modulus(self) -> float:
        return self.lam + 2.0 * self.mu

    @property
    def dilatational_speed(self) -> float:
        return math.sqrt(self.p_modulus / self.rho)

    @property
    def shear_speed(self) -> float:
        return math.sqrt(self.mu / self.rho)

    def axial_wavenumber(self, k: int) -> float:
        return k * math.pi / self.length

    @classmethod
    def from_young_poisson(cls, E: float, nu: float, rho: float, length: float, radius: float) -> "MaterialGeometry":
        lam, mu = lame_from_young_poisson(E, nu)
        return cls(lam=lam, mu=mu, rho=rho, length=length, radius=radius)

    @classmethod
    def from_preset(cls, preset: Mapping[str, Any]) -> "MaterialGeometry":
        """Build from a `materials:` entry of config/config.yaml."""
        fields: Dict[str, float] = {k: float(v) for k, v in preset.items()}
        if "young_pa" in fields or "poisson" in fields:
            return cls.from_young_poisson(
                fields["young_pa"], fields["poisson"], fields["rho"], fields["length_m"], fields["radius_m"]
            )
        return cls(
            lam=fields["lambda_pa"], mu=fields["mu_pa"], rho=fields["rho"],
            length=fields["length_m"], radius=fields["radius_m"],
        )


def lame_from_young_poisson(E: float, nu: float) -> Tuple[float, float]:
    E = ensure_finite("E", E)
    nu = ensure_finite("nu", nu)
    if E <= 0:
        raise DomainError(f"Young modulus must be positive, got {E!r}")
    if nu == 0.5:
        raise DomainError("nu = 0.5 is incompressible; lambda is unbounded")
    if not -1.0 < nu < 0.5:
        raise DomainError(f"Poisson ratio must lie in (-1, 0.5), got {nu!r}")
    lam = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu))
    mu = E / (2.0 * (1.0 + nu))
    return lam, mu


def young_poisson_from_lame(lam: float, mu: float) -> Tuple[float, float]:
    lam = ensure_finite("lambda", lam)
    mu = ensure_finite("mu", mu)
    if mu <= 0 or lam + mu == 0:
        raise DomainError(f"no Young/Poisson pair for lambda={lam!r}, mu={mu!r}")
    E = mu * (3.0 * lam + 2.0 * mu) / (lam + mu)
    nu = lam / (2.0 * (lam + mu))
    return E, nu
