"""
Parameter-regime split for a given (k, omega).

With K = k pi / L, d = rho w^2 / (lambda + 2 mu) and s = rho w^2 / mu (s > d):

    Case1   K^2 > s        both branches modified (I),  alpha_s = sqrt(K^2 - .)
    Case3   d < K^2 < s    branch 1 modified, branch 2 ordinary (J)
    Case2   K^2 < d        both branches ordinary,      alpha_s = sqrt(. - K^2)
    KZero   k = 0          single ordinary term, alpha = sqrt(s)

K^2 == d and K^2 == s are Singular1 / Singular2 and are never solved.
"""
from __future__ import annotations
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from src.analysis.special_functions import RadialKind
from src.core.errors import DomainError, SingularConfigurationError
from src.models.material import MaterialGeometry
from src.utils.io import get_logger
from src.utils.validation import ensure_non_negative_int

SINGULAR_REL_TOL = 1.0e-9
NEAR_BOUNDARY_REL_TOL = 1.0e-6

log = get_logger(__name__)


class CaseId(str, Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    KZERO = "KZero"
    SINGULAR1 = "Singular1"
    SINGULAR2 = "Singular2"


_KINDS = {
    CaseId.CASE1: (RadialKind.MODIFIED, RadialKind.MODIFIED),
    CaseId.CASE2: (RadialKind.ORDINARY, RadialKind.ORDINARY),
    CaseId.CASE3: (RadialKind.MODIFIED, RadialKind.ORDINARY),
    CaseId.KZERO: (RadialKind.ORDINARY, RadialKind.ORDINARY),
}


@dataclass(frozen=True)
class CaseClassification:
    case_id: CaseId
    alpha1: float
    alpha2: float
    gamma1: float
    gamma2: float
    kappa: float
    tau: float
    axial_wavenumber: float
    m: int = 0
    k: int = 0
    near_boundary: bool = False

    @property
    def is_singular(self) -> bool:
        return self.case_id in (CaseId.SINGULAR1, CaseId.SINGULAR2)

    @property
    def kind1(self) -> RadialKind:
        return _KINDS[self.case_id][0]

    @property
    def kind2(self) -> RadialKind:
        return _KINDS[self.case_id][1]

    @property
    def sigma1(self) -> float:
        return self.kind1.sign

    @property
    def sigma2(self) -> float:
        return self.kind2.sign


def _relative_gap(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b))


def classify(
    mg: MaterialGeometry,
    m: int,
    k: int,
    omega: float,
    singular_rel_tol: float = SINGULAR_REL_TOL,
    near_rel_tol: float = NEAR_BOUNDARY_REL_TOL,
) -> CaseClassification:
    ensure_non_negative_int("m", m)
    ensure_non_negative_int("k", k)
    if not (isinstance(omega, (int, float)) and math.isfinite(omega) and omega > 0):
        raise DomainError(f"omega must be finite and positive, got {omega!r}")

    K = mg.axial_wavenumber(k)
    K2 = K * K
    rw2 = mg.rho * omega * omega
    d = rw2 / mg.p_modulus
    s = rw2 / mg.mu
    kappa, tau = -K2, -omega * omega

    if k == 0:
        return CaseClassification(CaseId.KZERO, 0.0, math.sqrt(s), 1.0, math.nan, kappa, tau, 0.0, m, k)

    gamma2 = 1.0 - s / K2
    alpha1 = math.sqrt(abs(K2 - d))
    alpha2 = math.sqrt(abs(K2 - s))
    gap1, gap2 = _relative_gap(d, K2), _relative_gap(s, K2)

    if gap1 < singular_rel_tol:
        case_id = CaseId.SINGULAR1
    elif gap2 < singular_rel_tol:
        case_id = CaseId.SINGULAR2
    elif K2 > s:
        case_id = CaseId.CASE1
    elif K2 < d:
        case_id = CaseId.CASE2
    else:
        case_id = CaseId.CASE3

    near = min(gap1, gap2) < near_rel_tol
    if near:
        log.debug("k=%d f=%.6g Hz lies within %.1e of a case boundary (%s)", k, omega / (2 * math.pi), near_rel_tol, case_id.value)
    return CaseClassification(case_id, alpha1, alpha2, 1.0, gamma2, kappa, tau, K, m, k, near)


def case_boundaries_hz(mg: MaterialGeometry, k: int) -> Tuple[float, ...]:
    """Frequencies where K^2 = s (shear) and K^2 = d (dilatational), ascending; empty for k = 0."""
    ensure_non_negative_int("k", k)
    if k == 0:
        return ()
    scale = k / (2.0 * mg.length)
    return (scale * mg.shear_speed, scale * mg.dilatational_speed)


def require_solvable(cls: CaseClassification) -> CaseClassification:
    if cls.is_singular:
        raise SingularConfigurationError(
            f"{cls.case_id.value}: rho*w^2 matches (k*pi/L)^2 within tolerance; no finite solution is defined",
            classification=cls,
        )
    return cls
