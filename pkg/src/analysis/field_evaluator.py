"""
Displacement and stress fields of a solved excitation.

Every field separates as radial part x angular part x axial part x sin(w t):

    u_r = U_r(r) a_r(theta) sin(Kz)      a_r = sin(m theta) (BVP1) | cos(m theta) (BVP2)
    u_t = U_t(r) a_t(theta) sin(Kz)      a_t = cos(m theta) (BVP1) | -sin(m theta) (BVP2)
    u_z = U_z(r) a_r(theta) cos(Kz)

so that d a_r / d theta = m a_t and d a_t / d theta = -m a_r for both families.
Stresses then follow from the isotropic stress-displacement relations using
only U, dU/dr and the three combinations

    T1 = (U_r - m U_t) / r,   T2 = (m U_r - U_t) / r,   T3 = m U_z / r

which `radial_profile` evaluates in a form that stays regular at r = 0.
"""
from __future__ import annotations
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.analysis.case_classifier import CaseClassification, CaseId
from src.analysis.coefficient_solver import ModalSolution
from src.analysis.special_functions import RadialKind, bessel, bessel_over_power
from src.core.errors import ContractError, DomainError
from src.models.excitation import Bvp, ExcitationSpec
from src.models.material import MaterialGeometry

DEFAULT_BOUNDARY_GRID = (20, 20)
# points a hair outside the closed cylinder from float round-off are accepted
_INSIDE_SLACK = 1.0e-12


@dataclass(frozen=True)
class Point:
    r: float
    theta: float
    z: float

    def check_inside(self, mg: MaterialGeometry) -> "Point":
        values = (self.r, self.theta, self.z)
        if not all(isinstance(v, (int, float)) and math.isfinite(v) for v in values):
            raise DomainError(f"point coordinates must be finite, got {values}")
        if not (0.0 <= self.r <= mg.radius * (1 + _INSIDE_SLACK)):
            raise DomainError(f"r = {self.r} outside [0, R = {mg.radius}]")
        if not (-_INSIDE_SLACK * mg.length <= self.z <= mg.length * (1 + _INSIDE_SLACK)):
            raise DomainError(f"z = {self.z} outside [0, L = {mg.length}]")
        return self


@dataclass(frozen=True)
class FieldSample:
    u: Tuple[float, float, float]
    sigma: Tuple[float, float, float, float, float, float]
    t: float


@dataclass(frozen=True)
class RadialProfile:
    u_r: float
    du_r: float
    u_t: float
    du_t: float
    u_z: float
    du_z: float
    t1: float
    t2: float
    t3: float


def _check_consistency(sol: ModalSolution, cls: CaseClassification, ex: ExcitationSpec) -> None:
    if sol.case_id is not cls.case_id or sol.bvp is not ex.bvp or sol.m != ex.m or sol.k != ex.k or cls.m != ex.m or cls.k != ex.k:
        raise ContractError(
            f"solution ({sol.case_id.value}, {sol.bvp.value}, m={sol.m}, k={sol.k}) does not match "
            f"classification {cls.case_id.value} / excitation ({ex.bvp.value}, m={ex.m}, k={ex.k})"
        )


@dataclass(frozen=True)
class _BranchTerms:
    b: float        # B_m
    mb_r: float     # (m/r) B_m
    d: float        # d/dr B_m(alpha r)
    d2: float       # d^2/dr^2 B_m(alpha r)
    dmb_r: float    # d/dr [(m/r) B_m]
    mm1_r2: float   # m(m-1) B_m / r^2
    sb_r: float     # sigma alpha B_{m+1} / r


def _branch_terms(kind: RadialKind, m: int, alpha: float, r: float) -> _BranchTerms:
    x = alpha * r
    sign = kind.sign
    b = bessel(kind, m, x)
    mb_r = m * alpha * bessel_over_power(kind, m, 1, x) if m else 0.0
    mm1_r2 = m * (m - 1) * alpha * alpha * bessel_over_power(kind, m, 2, x) if m >= 2 else 0.0
    sb_r = sign * alpha * alpha * bessel_over_power(kind, m + 1, 1, x)
    d = mb_r + sign * alpha * bessel(kind, m + 1, x)
    d2 = sign * alpha * alpha * b + mm1_r2 - sb_r
    dmb_r = mm1_r2 + m * sb_r
    return _BranchTerms(b, mb_r, d, d2, dmb_r, mm1_r2, sb_r)


def radial_profile(sol: ModalSolution, cls: CaseClassification, ex: ExcitationSpec, r: float) -> RadialProfile:
    _check_consistency(sol, cls, ex)
    m = ex.m
    if cls.case_id is CaseId.KZERO:
        (amp,) = sol.amplitudes
        t = _branch_terms(RadialKind.ORDINARY, m, cls.alpha2, r)
        return RadialProfile(0.0, 0.0, 0.0, 0.0, amp * t.b, amp * t.d, 0.0, 0.0, amp * t.mb_r)

    a1, a2, a3 = sol.branch_amplitudes
    K = cls.axial_wavenumber
    c3 = ex.bvp.third_column_sign
    terms1 = _branch_terms(cls.kind1, m, cls.alpha1, r) if a1 != 0.0 else None
    terms2 = _branch_terms(cls.kind2, m, cls.alpha2, r) if (a2 != 0.0 or a3 != 0.0) else None
    u_r = du_r = u_t = du_t = u_z = du_z = t1 = t2 = t3 = 0.0
    for amp, gamma, t in ((a1, cls.gamma1, terms1), (a2, cls.gamma2, terms2)):
        if amp == 0.0:
            continue
        u_r += amp * t.d
        du_r += amp * t.d2
        u_t += amp * t.mb_r
        du_t += amp * t.dmb_r
        u_z += K * gamma * amp * t.b
        du_z += K * gamma * amp * t.d
        t1 += amp * (t.sb_r - t.mm1_r2)
        t2 += amp * (t.mm1_r2 + m * t.sb_r)
        t3 += K * gamma * amp * t.mb_r
    if a3 != 0.0:
        t = terms2
        s = c3 * a3
        u_r += s * t.mb_r
        du_r += s * t.dmb_r
        u_t += s * t.d
        du_t += s * t.d2
        t1 -= s * (t.mm1_r2 + m * t.sb_r)
        t2 += s * (t.mm1_r2 - t.sb_r)
    return RadialProfile(u_r, du_r, u_t, du_t, u_z, du_z, t1, t2, t3)


def angular_factors(bvp: Bvp, m: int, theta):
    """(a_r, a_t) for scalar or array theta."""
    if bvp is Bvp.BVP1:
        return np.sin(m * theta), np.cos(m * theta)
    return np.cos(m * theta), -np.sin(m * theta)


def _stress_coefficients(prof: RadialProfile, K: float, mg: MaterialGeometry):
    """Radial parts of (srr, stt, szz) [x a_r sin], srt [x a_t sin], srz [x a_r cos], stz [x a_t cos]."""
    lam, mu = mg.lam, mg.mu
    p = mg.p_modulus
    kuz = K * prof.u_z
    srr = p * prof.du_r + lam * prof.t1 - lam * kuz
    stt = lam * prof.du_r + p * prof.t1 - lam * kuz
    szz = lam * prof.du_r + lam * prof.t1 - p * kuz
    srt = mu * (prof.t2 + prof.du_t)
    srz = mu * (K * prof.u_r + prof.du_z)
    stz = mu * (K * prof.u_t + prof.t3)
    return srr, stt, szz, srt, srz, stz


def stationary_displacement(sol, cls, ex, mg: MaterialGeometry, p: Point) -> Tuple[float, float, float]:
    """Time-independent factor of the displacement (the field at sin(w t) = 1)."""
    p.check_inside(mg)
    prof = radial_profile(sol, cls, ex, p.r)
    K = cls.axial_wavenumber
    a_r, a_t = angular_factors(ex.bvp, ex.m, p.theta)
    s, c = math.sin(K * p.z), math.cos(K * p.z)
    return (float(prof.u_r * a_r * s), float(prof.u_t * a_t * s), float(prof.u_z * a_r * c))


def stationary_stress(sol, cls, ex, mg: MaterialGeometry, p: Point) -> Tuple[float, ...]:
    p.check_inside(mg)
    prof = radial_profile(sol, cls, ex, p.r)
    K = cls.axial_wavenumber
    a_r, a_t = angular_factors(ex.bvp, ex.m, p.theta)
    s, c = math.sin(K * p.z), math.cos(K * p.z)
    srr, stt, szz, srt, srz, stz = _stress_coefficients(prof, K, mg)
    return tuple(float(v) for v in (srr * a_r * s, stt * a_r * s, szz * a_r * s, srt * a_t * s, srz * a_r * c, stz * a_t * c))


def displacement(sol, cls, ex, mg: MaterialGeometry, p: Point, t: float) -> Tuple[float, float, float]:
    wt = math.sin(ex.omega * t)
    return tuple(u * wt for u in stationary_displacement(sol, cls, ex, mg, p))


def stress(sol, cls, ex, mg: MaterialGeometry, p: Point, t: float) -> Tuple[float, ...]:
    wt = math.sin(ex.omega * t)
    return tuple(sgm * wt for sgm in stationary_stress(sol, cls, ex, mg, p))


def sample(sol, cls, ex, mg: MaterialGeometry, p: Point, t: float) -> FieldSample:
    return FieldSample(u=displacement(sol, cls, ex, mg, p, t), sigma=stress(sol, cls, ex, mg, p, t), t=t)


def boundary_residual(sol, cls, ex, mg: MaterialGeometry, grid: Tuple[int, int] = DEFAULT_BOUNDARY_GRID) -> float:
    """
    max over a (theta, z) grid on r = R of |sigma - prescribed| for (srr, srt, srz),
    divided by max(|A|, |B|, |C|) (left unnormalized when all amplitudes are zero).
    """
    n_theta, n_z = grid
    if n_theta < 2 or n_z < 2:
        raise DomainError(f"boundary grid needs at least 2x2 points, got {grid}")
    prof = radial_profile(sol, cls, ex, mg.radius)
    K = cls.axial_wavenumber
    srr, _, _, srt, srz, _ = _stress_coefficients(prof, K, mg)

    theta = np.linspace(0.0, 2.0 * math.pi, n_theta)[:, None]
    z = np.linspace(0.0, mg.length, n_z)[None, :]
    a_r, a_t = angular_factors(ex.bvp, ex.m, theta)
    s, c = np.sin(K * z), np.cos(K * z)
    # prescribed angular factors: BVP1 (sin, cos, sin), BVP2 (cos, sin, cos); note a_t carries a sign for BVP2
    t_shear = a_t if ex.bvp is Bvp.BVP1 else -a_t
    residual = max(
        float(np.max(np.abs((srr - ex.amp_a) * a_r * s))),
        float(np.max(np.abs(srt * a_t * s - ex.amp_b * t_shear * s))),
        float(np.max(np.abs((srz - ex.amp_c) * a_r * c))),
    )
    scale = max(abs(ex.amp_a), abs(ex.amp_b), abs(ex.amp_c))
    return residual / scale if scale > 0 else residual
