"""
Axisymmetric (m = 0, BVP2) fields rebuilt through the ENBKS
parameterization, used as an independent cross-check of the main solver.

After the end conditions fix k_z = k pi / L and zero the P-branch, only the
Q-branch survives:

    u_z = Q J0(K2 r) + sum_s Q_s J0(k_rs r) cos(k_z z)
    u_r = sum_s Q_s chi_s J1(k_rs r) sin(k_z z)

with k_r1^2 = rho w^2/(lam + 2mu) - k_z^2, k_r2^2 = rho w^2/mu - k_z^2,
chi_1 = -k_r1 / k_z, chi_2 = k_z / k_r2 and Q_s = k_z A_s gamma_s.

A negative k_rs^2 makes k_rs = i alpha_s. Every product that appears
(k_r J1(k_r r), chi J1, chi k_r) is real once I_p(x) = i^-p J_p(i x) is applied,
so all arithmetic below stays real.
"""
from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from src.analysis.case_classifier import CaseClassification, CaseId
from src.analysis.coefficient_solver import ModalSolution, solve
from src.analysis.field_evaluator import Point, stationary_displacement, stationary_stress
from src.analysis.special_functions import RadialKind, bessel, bessel_over_power
from src.core.errors import ContractError
from src.models.excitation import Bvp, ExcitationSpec
from src.models.material import MaterialGeometry
from src.utils.io import get_logger

log = get_logger(__name__)


@dataclass(frozen=True)
class RadialWavenumber:
    """k_r = alpha (real) or i alpha (imaginary)."""
    alpha: float
    imaginary: bool

    @property
    def squared(self) -> float:
        return -self.alpha ** 2 if self.imaginary else self.alpha ** 2

    @property
    def kind(self) -> RadialKind:
        return RadialKind.MODIFIED if self.imaginary else RadialKind.ORDINARY

    def j0(self, r: float) -> float:
        """J0(k_r r)."""
        return bessel(self.kind, 0, self.alpha * r)

    def kr_j1(self, r: float) -> float:
        """k_r J1(k_r r): -alpha I1 for imaginary k_r, alpha J1 for real."""
        return -self.kind.sign * self.alpha * bessel(self.kind, 1, self.alpha * r)

    def kr_j1_over_r(self, r: float) -> float:
        """k_r J1(k_r r) / r, finite on the axis."""
        return -self.kind.sign * self.alpha ** 2 * bessel_over_power(self.kind, 1, 1, self.alpha * r)


@dataclass(frozen=True)
class EnbksConstants:
    K1: float
    K2: float
    k_z: float
    k_r: Tuple[RadialWavenumber, RadialWavenumber]
    Q_k: Tuple[float, float]
    Q: float = 0.0

    def chi_kr(self, s: int) -> float:
        """chi_s k_rs (real in every case)."""
        return -self.k_r[0].squared / self.k_z if s == 0 else self.k_z

    def chi_j1(self, s: int, r: float, over_r: bool = False) -> float:
        """chi_s J1(k_rs r), optionally divided by r."""
        kr = self.k_r[s]
        kj = kr.kr_j1_over_r(r) if over_r else kr.kr_j1(r)
        if s == 0:
            return -kj / self.k_z
        return self.k_z * kj / kr.squared


def enbks_constants(mg: MaterialGeometry, ex: ExcitationSpec, cls: CaseClassification, amplitudes: Sequence[float]) -> EnbksConstants:
    if ex.m != 0 or ex.bvp is not Bvp.BVP2:
        raise ContractError(f"ENBKS reconstruction covers m = 0 BVP2 only, got {ex.bvp.value} m={ex.m}")
    if cls.case_id not in (CaseId.CASE1, CaseId.CASE2, CaseId.CASE3):
        raise ContractError(f"ENBKS reconstruction needs Case1/2/3, got {cls.case_id.value}")
    a1, a2 = amplitudes
    rw2 = mg.rho * ex.omega ** 2
    k_z = cls.axial_wavenumber
    k_r = (
        RadialWavenumber(cls.alpha1, cls.kind1 is RadialKind.MODIFIED),
        RadialWavenumber(cls.alpha2, cls.kind2 is RadialKind.MODIFIED),
    )
    return EnbksConstants(
        K1=math.sqrt(rw2 / mg.p_modulus),
        K2=math.sqrt(rw2 / mg.mu),
        k_z=k_z,
        k_r=k_r,
        Q_k=(k_z * a1 * cls.gamma1, k_z * a2 * cls.gamma2),
    )


@dataclass(frozen=True)
class EnbksFields:
    u_z: float
    u_r: float
    sigma_rr: float
    sigma_zz: float
    sigma_rz: float


def enbks_fields(mg: MaterialGeometry, consts: EnbksConstants, p: Point) -> EnbksFields:
    """Stationary parts of the five axisymmetric fields at p."""
    lam, mu, pm = mg.lam, mg.mu, mg.p_modulus
    kz = consts.k_z
    s, c = math.sin(kz * p.z), math.cos(kz * p.z)
    u_z = consts.Q * bessel(RadialKind.ORDINARY, 0, consts.K2 * p.r)
    srz = -consts.Q * consts.K2 * mu * bessel(RadialKind.ORDINARY, 1, consts.K2 * p.r)
    u_r = srr = szz = 0.0
    for idx, q in enumerate(consts.Q_k):
        if q == 0.0:
            continue
        kr = consts.k_r[idx]
        j0 = kr.j0(p.r)
        chi_kr = consts.chi_kr(idx)
        chi_j1 = consts.chi_j1(idx, p.r)
        u_z += q * j0 * c
        u_r += q * chi_j1 * s
        srr += q * ((pm * chi_kr - lam * kz) * j0 - 2.0 * mu * consts.chi_j1(idx, p.r, over_r=True)) * s
        szz += q * (-pm * kz + lam * chi_kr) * j0 * s
        srz += mu * q * (-kr.kr_j1(p.r) + chi_j1 * kz) * c
    return EnbksFields(u_z, u_r, srr, szz, srz)


def _main_fields(sol: ModalSolution, cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry, p: Point) -> EnbksFields:
    u_r, _, u_z = stationary_displacement(sol, cls, ex, mg, p)
    srr, _, szz, _, srz, _ = stationary_stress(sol, cls, ex, mg, p)
    return EnbksFields(u_z, u_r, srr, szz, srz)


def enbks_compare(
    mg: MaterialGeometry,
    ex: ExcitationSpec,
    freqs_hz: Iterable[float],
    points: Sequence[Point],
) -> float:
    """
    Max relative discrepancy between the main solver and the ENBKS reconstruction.

    Displacements are normalized by the largest displacement seen at that
    frequency and stresses by the largest stress, so both groups count equally.
    """
    worst = 0.0
    for f in freqs_hz:
        ex_f = ex.at_frequency(f)
        cls, sol = solve(ex_f, mg)
        consts = enbks_constants(mg, ex_f, cls, sol.amplitudes)
        main = [_main_fields(sol, cls, ex_f, mg, p) for p in points]
        other = [enbks_fields(mg, consts, p) for p in points]
        for group in (("u_z", "u_r"), ("sigma_rr", "sigma_zz", "sigma_rz")):
            scale = max(abs(getattr(fm, name)) for fm in main for name in group)
            diff = max(abs(getattr(fm, name) - getattr(fe, name)) for fm, fe in zip(main, other) for name in group)
            rel = diff / scale if scale > 0 else diff
            worst = max(worst, rel)
        log.debug("ENBKS comparison at %.6g Hz (%s): running max %.3e", f, cls.case_id.value, worst)
    return worst

