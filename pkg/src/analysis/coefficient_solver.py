"""
Boundary-condition systems and their solutions.

Per branch s the radial basis is B_m(alpha_s r) with B = I (sign +1) or J
(sign -1), see `RadialKind`. Writing sigma_s for that sign, one set of entries
covers all three cases:

    f = [b1 R / 2mu + m(m-1)/R] B_m(a1 R)      b_s = lam (sigma_s a_s^2 - gamma_s K^2)
    g = [b2 R / 2mu + m(m-1)/R] B_m(a2 R)            + 2 mu sigma_s a_s^2
    h = [sigma_2 a2^2 R / 2 + m(m-1)/R] B_m(a2 R)
    p = (m/R) B_m(a1 R)        q = (m/R) B_m(a2 R)
    v = a1 B_{m+1}(a1 R)       w = a2 B_{m+1}(a2 R)

b_s is the `beta_s` coefficient for a modified branch and `-eta_s` for an
ordinary one. With X = (m-1) q + sigma_2 m w, Y = (m-1) p + sigma_1 m v and
c = -1 (BVP1) / +1 (BVP2) the m >= 1 system is

    [ f - s1 v          g - s2 w               c X        ] [A1]   [ A  ]
    [ Y                 X                      c (h - s2 w)] [A2] = [-c B ]
    [ 2 (p + s1 v)      (1 + g2)(q + s2 w)     c q        ] [A3]   [ C  ]

with (A, B, C) = (amp_a R / 2mu, amp_b R / 2mu, amp_c L / (k pi mu)).
The reported determinant D is the BVP1 form for both families, so for BVP2
D = -det(matrix).
"""
from __future__ import annotations
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from src.analysis.case_classifier import CaseClassification, CaseId, classify, require_solvable
from src.analysis.linalg import cofactor_determinant, scaled_determinant, solve_generic
from src.analysis.special_functions import RadialKind, bessel, besselJ
from src.core.errors import ContractError, ResonanceError, RoutingError, SingularMatrixError
from src.models.excitation import Bvp, ExcitationSpec
from src.models.material import MaterialGeometry
from src.utils.io import get_logger

DEFAULT_DET_FLOOR = 1.0e-300
NEAR_RESONANCE_TOL = 1.0e-8

DELTA_BVP1 = (-1, 1, 1)
DELTA_BVP2 = (-1, 1, -1)

log = get_logger(__name__)


class SystemShape(str, Enum):
    FULL = "3x3"
    AXISYMMETRIC = "2x2"
    TORSIONAL = "1x1"


@dataclass(frozen=True)
class SystemEntries:
    case_id: CaseId
    bvp: Bvp
    m: int
    kind1: RadialKind
    kind2: RadialKind
    gamma2: float
    f: float
    g: float
    h: float
    p: float
    q: float
    v: float
    w: float
    beta1: float
    beta2: float
    eta1: float
    eta2: float
    rhs: Tuple[float, float, float]

    @property
    def sigma1(self) -> float:
        return self.kind1.sign

    @property
    def sigma2(self) -> float:
        return self.kind2.sign

    def symbols(self) -> Dict[str, float]:
        """Entries under their conventional letters: lower case for I branches, upper case for J."""
        lo1 = self.kind1 is RadialKind.MODIFIED
        lo2 = self.kind2 is RadialKind.MODIFIED

        def name(letter: str, lower: bool, order: int) -> str:
            return f"{letter if lower else letter.upper()}_{order}"

        m, n = self.m, self.m + 1
        return {
            name("f", lo1, m): self.f,
            name("p", lo1, m): self.p,
            name("v", lo1, n): self.v,
            name("g", lo2, m): self.g,
            name("h", lo2, m): self.h,
            name("q", lo2, m): self.q,
            name("w", lo2, n): self.w,
        }


@dataclass(frozen=True)
class LinearSystem:
    shape: SystemShape
    entries: SystemEntries
    matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class CofactorCoefficients:
    """C[i][j]: amplitude i (0..2) against rhs component j (A, B, C); D the determinant."""
    c: Tuple[Tuple[float, float, float], ...]
    determinant: float


@dataclass(frozen=True)
class ModalSolution:
    amplitudes: Tuple[float, ...]
    determinant: float
    scaled_determinant: float
    delta_signs: Tuple[int, ...]
    case_id: CaseId
    bvp: Bvp
    m: int
    k: int
    quality: str = "ok"
    method: str = "closed_form"

    @property
    def branch_amplitudes(self) -> Tuple[float, float, float]:
        """(A1, A2, A3) with the terms a reduced system does not carry set to zero."""
        if self.case_id is CaseId.KZERO:
            raise ContractError("KZero solutions carry a single axial amplitude, not branch amplitudes")
        a = self.amplitudes
        if len(a) == 3:
            return a[0], a[1], a[2]
        if len(a) == 2:
            return a[0], a[1], 0.0
        return 0.0, 0.0, a[0]


def _check_pairing(cls: CaseClassification, ex: ExcitationSpec) -> None:
    if cls.m != ex.m or cls.k != ex.k or not math.isclose(-cls.tau, ex.omega * ex.omega, rel_tol=1e-12):
        raise ContractError(
            f"classification (m={cls.m}, k={cls.k}) does not belong to excitation (m={ex.m}, k={ex.k}, omega={ex.omega})"
        )


def compute_entries(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> SystemEntries:
    _check_pairing(cls, ex)
    require_solvable(cls)
    if cls.case_id is CaseId.KZERO:
        raise RoutingError("k = 0 has no branch system; use solve_k0")

    m, R, mu, lam = ex.m, mg.radius, mg.mu, mg.lam
    K2 = cls.axial_wavenumber ** 2
    a1, a2 = cls.alpha1, cls.alpha2
    b1m, b1n = bessel(cls.kind1, m, a1 * R), bessel(cls.kind1, m + 1, a1 * R)
    b2m, b2n = bessel(cls.kind2, m, a2 * R), bessel(cls.kind2, m + 1, a2 * R)

    beta1 = lam * (a1 * a1 - cls.gamma1 * K2) + 2.0 * mu * a1 * a1
    beta2 = lam * (a2 * a2 - cls.gamma2 * K2) + 2.0 * mu * a2 * a2
    eta1 = lam * (a1 * a1 + cls.gamma1 * K2) + 2.0 * mu * a1 * a1
    eta2 = lam * (a2 * a2 + cls.gamma2 * K2) + 2.0 * mu * a2 * a2
    lead1 = beta1 if cls.sigma1 > 0 else -eta1
    lead2 = beta2 if cls.sigma2 > 0 else -eta2
    mm1 = m * (m - 1) / R

    rhs = (
        ex.amp_a * R / (2.0 * mu),
        ex.amp_b * R / (2.0 * mu),
        ex.amp_c * mg.length / (ex.k * math.pi * mu),
    )
    return SystemEntries(
        case_id=cls.case_id, bvp=ex.bvp, m=m, kind1=cls.kind1, kind2=cls.kind2, gamma2=cls.gamma2,
        f=(lead1 * R / (2.0 * mu) + mm1) * b1m,
        g=(lead2 * R / (2.0 * mu) + mm1) * b2m,
        h=(cls.sigma2 * a2 * a2 * R / 2.0 + mm1) * b2m,
        p=(m / R) * b1m,
        q=(m / R) * b2m,
        v=a1 * b1n,
        w=a2 * b2n,
        beta1=beta1, beta2=beta2, eta1=eta1, eta2=eta2,
        rhs=rhs,
    )


def _full_matrix(e: SystemEntries) -> Tuple[np.ndarray, np.ndarray]:
    s1, s2, m = e.sigma1, e.sigma2, e.m
    c = e.bvp.third_column_sign
    x = (m - 1) * e.q + s2 * m * e.w
    y = (m - 1) * e.p + s1 * m * e.v
    matrix = np.array([
        [e.f - s1 * e.v, e.g - s2 * e.w, c * x],
        [y, x, c * (e.h - s2 * e.w)],
        [2.0 * (e.p + s1 * e.v), (1.0 + e.gamma2) * (e.q + s2 * e.w), c * e.q],
    ])
    a, b, cc = e.rhs
    return matrix, np.array([a, -c * b, cc])


def assemble_system(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> LinearSystem:
    if cls.case_id is CaseId.KZERO:
        raise RoutingError("k = 0 is solved by solve_k0")
    if ex.m == 0:
        raise RoutingError("m = 0 uses assemble_axisymmetric_system (BVP2) or assemble_torsional_system (BVP1)")
    entries = compute_entries(cls, ex, mg)
    matrix, rhs = _full_matrix(entries)
    return LinearSystem(SystemShape.FULL, entries, matrix, rhs)


def assemble_axisymmetric_system(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> LinearSystem:
    if ex.bvp is not Bvp.BVP2:
        raise RoutingError("the 2x2 axisymmetric system belongs to BVP2; BVP1 with m = 0 is torsional")
    if ex.m != 0:
        raise RoutingError(f"axisymmetric system requires m = 0, got m = {ex.m}")
    if cls.case_id is CaseId.KZERO:
        raise RoutingError("k = 0 is solved by solve_k0")
    e = compute_entries(cls, ex, mg)
    s1, s2 = e.sigma1, e.sigma2
    matrix = np.array([
        [e.f - s1 * e.v, e.g - s2 * e.w],
        [2.0 * s1 * e.v, (1.0 + e.gamma2) * s2 * e.w],
    ])
    return LinearSystem(SystemShape.AXISYMMETRIC, e, matrix, np.array([e.rhs[0], e.rhs[2]]))


def assemble_torsional_system(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> LinearSystem:
    if ex.bvp is not Bvp.BVP1 or ex.m != 0:
        raise RoutingError("torsional 1x1 system requires BVP1 with m = 0")
    if cls.case_id is CaseId.KZERO:
        raise RoutingError("k = 0 is solved by solve_k0")
    e = compute_entries(cls, ex, mg)
    matrix = np.array([[-(e.h - e.sigma2 * e.w)]])
    return LinearSystem(SystemShape.TORSIONAL, e, matrix, np.array([e.rhs[1]]))


def assemble(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> LinearSystem:
    if ex.m >= 1:
        return assemble_system(cls, ex, mg)
    if ex.bvp is Bvp.BVP2:
        return assemble_axisymmetric_system(cls, ex, mg)
    return assemble_torsional_system(cls, ex, mg)


def _m1_case1(e: SystemEntries, G: float) -> CofactorCoefficients:
    f, g, h, p, q, v, w = e.f, e.g, e.h, e.p, e.q, e.v, e.w
    c = (
        (q * w - G * (h - w) * (q + w), G * (q + w) * w - (g - w) * q, (g - w) * (h - w) - w * w),
        (q * v - 2.0 * (h - w) * (p + v), 2.0 * (p + v) * w - (f - v) * q, (f - v) * (h - w) - v * w),
        (G * (q + w) * v - 2.0 * (p + v) * w, 2.0 * (g - w) * (p + v) - G * (f - v) * (q + w), (f - v) * w - (g - w) * v),
    )
    det = (
        2.0 * (w * w - (g - w) * (h - w)) * (p + v)
        + G * ((f - v) * (h - w) - v * w) * (q + w)
        + ((g - w) * v - (f - v) * w) * q
    )
    return CofactorCoefficients(c=c, determinant=det)


def _m1_case2(e: SystemEntries, G: float) -> CofactorCoefficients:
    F, Gm, H, P, Q, V, W = e.f, e.g, e.h, e.p, e.q, e.v, e.w
    c = (
        (-Q * W - G * (H + W) * (Q - W), -G * (Q - W) * W - (Gm + W) * Q, (Gm + W) * (H + W) - W * W),
        (-Q * V - 2.0 * (H + W) * (P - V), -2.0 * (P - V) * W - (F + V) * Q, (F + V) * (H + W) - V * W),
        (-G * (Q - W) * V + 2.0 * (P - V) * W, 2.0 * (Gm + W) * (P - V) - G * (F + V) * (Q - W), -(F + V) * W + (Gm + W) * V),
    )
    det = (
        2.0 * (W * W - (Gm + W) * (H + W)) * (P - V)
        + G * ((F + V) * (H + W) - V * W) * (Q - W)
        + (-(Gm + W) * V + (F + V) * W) * Q
    )
    return CofactorCoefficients(c=c, determinant=det)


def _m1_case3(e: SystemEntries, G: float) -> CofactorCoefficients:
    f, Gm, H, p, Q, v, W = e.f, e.g, e.h, e.p, e.q, e.v, e.w
    c = (
        (-Q * W - G * (H + W) * (Q - W), -G * (Q - W) * W - (Gm + W) * Q, (Gm + W) * (H + W) - W * W),
        (Q * v - 2.0 * (H + W) * (p + v), -2.0 * (p + v) * W - (f - v) * Q, (f - v) * (H + W) + v * W),
        (G * (Q - W) * v + 2.0 * (p + v) * W, 2.0 * (Gm + W) * (p + v) - G * (f - v) * (Q - W), -(f - v) * W - (Gm + W) * v),
    )
    det = (
        2.0 * (W * W - (Gm + W) * (H + W)) * (p + v)
        + G * ((f - v) * (H + W) + v * W) * (Q - W)
        + ((Gm + W) * v + (f - v) * W) * Q
    )
    return CofactorCoefficients(c=c, determinant=det)


# m = 1 cofactors written per case in the entries' own letters: lower case for
# I branches (f, p, v, ...), upper case for J branches (F, P, V, ...); G = 1 + gamma2.
_M1_COFACTORS = {
    CaseId.CASE1: _m1_case1,
    CaseId.CASE2: _m1_case2,
    CaseId.CASE3: _m1_case3,
}


def cofactor_coefficients(e: SystemEntries, reduced_m1: bool = False) -> CofactorCoefficients:
    """
    Cofactor coefficients of the m >= 1 system in grouped form.

    `reduced_m1` evaluates the separately written m = 1 expressions of each case
    instead of the general-m grouping.
    """
    if e.m < 1:
        raise RoutingError("closed-form cofactors are defined for m >= 1")
    if reduced_m1:
        if e.m != 1:
            raise RoutingError(f"m = 1 reduced forms requested for m = {e.m}")
        return _M1_COFACTORS[e.case_id](e, 1.0 + e.gamma2)
    s1, s2, m = e.sigma1, e.sigma2, e.m
    gam = 1.0 + e.gamma2
    f_hat = e.f - s1 * e.v
    g_hat = e.g - s2 * e.w
    h_hat = e.h - s2 * e.w
    z1 = e.p + s1 * e.v
    z2 = e.q + s2 * e.w
    q = e.q
    x = (m - 1) * q + s2 * m * e.w
    y = (m - 1) * e.p + s1 * m * e.v

    c = (
        (x * q - gam * h_hat * z2, gam * x * z2 - g_hat * q, g_hat * h_hat - x * x),
        (y * q - 2.0 * h_hat * z1, 2.0 * x * z1 - f_hat * q, f_hat * h_hat - x * y),
        (gam * y * z2 - 2.0 * x * z1, 2.0 * g_hat * z1 - gam * f_hat * z2, f_hat * x - g_hat * y),
    )
    det = 2.0 * (x * x - g_hat * h_hat) * z1 + gam * (f_hat * h_hat - x * y) * z2 + (g_hat * y - f_hat * x) * q
    return CofactorCoefficients(c=c, determinant=det)


def reported_determinant(system: LinearSystem) -> float:
    """Determinant in the sign convention used for reporting (BVP1 form for 3x3)."""
    det = cofactor_determinant(system.matrix)
    if system.shape is SystemShape.FULL and system.entries.bvp is Bvp.BVP2:
        return -det
    return det


def _quality(scaled: float, near_tol: float) -> str:
    return "near_resonance" if abs(scaled) < near_tol else "ok"


def _guard_resonance(det: float, scaled: float, det_floor: float) -> None:
    if det == 0.0 or abs(scaled) <= det_floor:
        raise ResonanceError("boundary system is singular at this frequency", det)


def solve_closed_form(
    system: LinearSystem,
    cls: CaseClassification,
    ex: ExcitationSpec,
    det_floor: float = DEFAULT_DET_FLOOR,
    near_tol: float = NEAR_RESONANCE_TOL,
) -> ModalSolution:
    _check_pairing(cls, ex)
    e = system.entries
    if e.case_id is not cls.case_id or e.bvp is not ex.bvp or e.m != ex.m:
        raise ContractError("system was assembled for a different excitation")
    scaled = scaled_determinant(system.matrix)
    big_a, big_b, big_c = e.rhs

    if system.shape is SystemShape.FULL:
        coeffs = cofactor_coefficients(e, reduced_m1=(e.m == 1))
        det = coeffs.determinant
        _guard_resonance(det, scaled, det_floor)
        if ex.bvp is Bvp.BVP1:
            deltas = DELTA_BVP1
            amps = tuple(d / det * (ca * big_a + cb * big_b + cc * big_c) for d, (ca, cb, cc) in zip(deltas, coeffs.c))
        else:
            deltas = DELTA_BVP2
            amps = tuple(d / det * (ca * big_a - cb * big_b + cc * big_c) for d, (ca, cb, cc) in zip(deltas, coeffs.c))
    elif system.shape is SystemShape.AXISYMMETRIC:
        (a, b), (c, d) = system.matrix
        det = a * d - b * c
        _guard_resonance(det, scaled, det_floor)
        deltas = ()
        amps = ((d * big_a - b * big_c) / det, (a * big_c - c * big_a) / det)
    else:
        det = float(system.matrix[0, 0])
        _guard_resonance(det, scaled, det_floor)
        deltas = ()
        amps = (big_b / det,)

    quality = _quality(scaled, near_tol)
    if quality != "ok":
        log.debug("near-resonance solve: %s m=%d k=%d f=%.6g Hz scaled det %.3e", ex.bvp.value, ex.m, ex.k, ex.frequency_hz, scaled)
    return ModalSolution(
        amplitudes=tuple(float(a) for a in amps), determinant=float(det), scaled_determinant=float(scaled),
        delta_signs=deltas, case_id=cls.case_id, bvp=ex.bvp, m=ex.m, k=ex.k, quality=quality, method="closed_form",
    )


def solve_by_elimination(
    system: LinearSystem,
    cls: CaseClassification,
    ex: ExcitationSpec,
    det_floor: float = DEFAULT_DET_FLOOR,
    near_tol: float = NEAR_RESONANCE_TOL,
) -> ModalSolution:
    _check_pairing(cls, ex)
    det = reported_determinant(system)
    scaled = scaled_determinant(system.matrix)
    _guard_resonance(det, scaled, det_floor)
    try:
        x = solve_generic(system.matrix, system.rhs)
    except SingularMatrixError:
        raise ResonanceError("elimination hit a zero pivot", det)
    deltas = (DELTA_BVP1 if ex.bvp is Bvp.BVP1 else DELTA_BVP2) if system.shape is SystemShape.FULL else ()
    return ModalSolution(
        amplitudes=tuple(float(a) for a in x), determinant=det, scaled_determinant=scaled,
        delta_signs=deltas, case_id=cls.case_id, bvp=ex.bvp, m=ex.m, k=ex.k,
        quality=_quality(scaled, near_tol), method="generic",
    )


def k0_bracket(m: int, alpha: float, radius: float) -> Tuple[float, float]:
    """The two terms of (m/R) J_m(aR) - a J_{m+1}(aR)."""
    return (m / radius) * besselJ(m, alpha * radius), alpha * besselJ(m + 1, alpha * radius)


def solve_k0(
    ex: ExcitationSpec,
    mg: MaterialGeometry,
    cls: Optional[CaseClassification] = None,
    near_tol: float = NEAR_RESONANCE_TOL,
) -> ModalSolution:
    """
    k = 0: u_z = A J_m(a r) x (cos m theta for BVP2, sin m theta for BVP1), a = sqrt(rho w^2 / mu),
    A = C / (mu [(m/R) J_m(aR) - a J_{m+1}(aR)]).
    """
    if ex.k != 0:
        raise RoutingError(f"solve_k0 requires k = 0, got k = {ex.k}")
    cls = cls or classify(mg, ex.m, 0, ex.omega)
    _check_pairing(cls, ex)
    lead, tail = k0_bracket(ex.m, cls.alpha2, mg.radius)
    bracket = lead - tail
    scale = max(abs(lead), abs(tail))
    scaled = bracket / scale if scale > 0 else 0.0
    if bracket == 0.0:
        raise ResonanceError("k = 0 denominator vanishes", bracket)
    amp = ex.amp_c / (mg.mu * bracket)
    return ModalSolution(
        amplitudes=(float(amp),), determinant=float(bracket), scaled_determinant=float(scaled),
        delta_signs=(), case_id=CaseId.KZERO, bvp=ex.bvp, m=ex.m, k=0,
        quality=_quality(scaled, near_tol), method="closed_form",
    )


def system_determinant(cls: CaseClassification, ex: ExcitationSpec, mg: MaterialGeometry) -> float:
    """Reported determinant without solving; the k = 0 bracket for KZero."""
    require_solvable(cls)
    if cls.case_id is CaseId.KZERO:
        _check_pairing(cls, ex)
        lead, tail = k0_bracket(ex.m, cls.alpha2, mg.radius)
        return lead - tail
    return reported_determinant(assemble(cls, ex, mg))


def solve(
    ex: ExcitationSpec,
    mg: MaterialGeometry,
    method: str = "closed_form",
    det_floor: float = DEFAULT_DET_FLOOR,
    near_tol: float = NEAR_RESONANCE_TOL,
) -> Tuple[CaseClassification, ModalSolution]:
    """Classify, assemble and solve in one call."""
    cls = require_solvable(classify(mg, ex.m, ex.k, ex.omega))
    if cls.case_id is CaseId.KZERO:
        return cls, solve_k0(ex, mg, cls, near_tol=near_tol)
    system = assemble(cls, ex, mg)
    if method == "closed_form":
        return cls, solve_closed_form(system, cls, ex, det_floor, near_tol)
    if method == "generic":
        return cls, solve_by_elimination(system, cls, ex, det_floor, near_tol)
    raise ValueError(f"unknown method {method!r}; expected 'closed_form' or 'generic'")
