"""
Checks of the Navier-Lame equation of motion.

For the stationary field u (time factor sin(w t) stripped, so d^2/dt^2 -> -w^2):

    res = (lam + mu) grad(div u) + mu lap(u) + rho w^2 u

which equals (lam + 2mu) grad(div u) - mu curl(curl u) - rho u_tt.

`pde_residual` takes second-order central differences of the evaluated field in
Cartesian coordinates, so the stencil may straddle the axis. Its error grows like
(evaluation noise) / h^2, and in the low-frequency Case1 regime, where the two
branches nearly cancel, that noise dominates.

`analytic_pde_residual` applies the operator in cylindrical components to the
separated field. The radial second and third derivatives of each Bessel term come
from the Bessel equation itself,

    B'' = -B'/r + (m^2/r^2 + sign a^2) B,

so no step size enters and only double-precision cancellation remains.
"""
from __future__ import annotations
import math
from typing import Callable, Tuple

import numpy as np

from src.analysis.case_classifier import CaseClassification, CaseId
from src.analysis.coefficient_solver import ModalSolution
from src.analysis.field_evaluator import Point, angular_factors, stationary_displacement
from src.analysis.special_functions import RadialKind, bessel
from src.core.errors import DomainError
from src.models.excitation import ExcitationSpec
from src.models.material import MaterialGeometry


def _cartesian_field(sol, cls, ex, mg) -> Callable[[np.ndarray], np.ndarray]:
    def u(xyz: np.ndarray) -> np.ndarray:
        x, y, z = xyz
        r = math.hypot(x, y)
        theta = math.atan2(y, x)
        u_r, u_t, u_z = stationary_displacement(sol, cls, ex, mg, Point(r, theta, z))
        c, s = math.cos(theta), math.sin(theta)
        return np.array([u_r * c - u_t * s, u_r * s + u_t * c, u_z])
    return u


def _hessians(u: Callable[[np.ndarray], np.ndarray], x0: np.ndarray, h: float) -> np.ndarray:
    """H[c, i, j] = d^2 u_c / dx_i dx_j."""
    eye = np.eye(3) * h
    u0 = u(x0)
    hess = np.zeros((3, 3, 3))
    for i in range(3):
        hess[:, i, i] = (u(x0 + eye[i]) - 2.0 * u0 + u(x0 - eye[i])) / (h * h)
        for j in range(i + 1, 3):
            mixed = (
                u(x0 + eye[i] + eye[j]) - u(x0 + eye[i] - eye[j])
                - u(x0 - eye[i] + eye[j]) + u(x0 - eye[i] - eye[j])
            ) / (4.0 * h * h)
            hess[:, i, j] = hess[:, j, i] = mixed
    return hess


def pde_residual(
    sol: ModalSolution,
    cls: CaseClassification,
    ex: ExcitationSpec,
    mg: MaterialGeometry,
    p: Point,
    h: float,
) -> np.ndarray:
    """Finite-difference residual vector (r, theta, z components) at an interior point, Pa/m."""
    if not (h > 0 and math.isfinite(h)):
        raise DomainError(f"step h must be positive, got {h!r}")
    if p.r + 2 * h > mg.radius or p.z - 2 * h < 0.0 or p.z + 2 * h > mg.length:
        raise DomainError(f"point {p} is closer than 2h = {2 * h} to the cylinder boundary")

    u = _cartesian_field(sol, cls, ex, mg)
    c, s = math.cos(p.theta), math.sin(p.theta)
    x0 = np.array([p.r * c, p.r * s, p.z])
    hess = _hessians(u, x0, h)
    grad_div = np.einsum("iij->j", hess)
    laplacian = np.einsum("cjj->c", hess)
    res = (mg.lam + mg.mu) * grad_div + mg.mu * laplacian + mg.rho * ex.omega ** 2 * u(x0)
    return np.array([res[0] * c + res[1] * s, -res[0] * s + res[1] * c, res[2]])


def _branch_jets(kind: RadialKind, m: int, alpha: float, r: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """[f, f', f''] for f = B_m(alpha r), dB/dr and (m/r) B_m."""
    x = alpha * r
    b = bessel(kind, m, x)
    d1 = alpha * ((m / x) * b + kind.sign * bessel(kind, m + 1, x))
    q = m * m / (r * r) + kind.sign * alpha * alpha
    d2 = -d1 / r + q * b
    d3 = -d2 / r + d1 / (r * r) + q * d1 - 2.0 * m * m * b / r ** 3
    mb_r = m * np.array([b / r, d1 / r - b / r ** 2, d2 / r - 2.0 * d1 / r ** 2 + 2.0 * b / r ** 3])
    return np.array([b, d1, d2]), np.array([d1, d2, d3]), mb_r


def radial_jets(
    sol: ModalSolution, cls: CaseClassification, ex: ExcitationSpec, r: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """[U, U', U''] of the radial parts of u_r, u_theta and u_z at r > 0."""
    m = ex.m
    zero = np.zeros(3)
    if cls.case_id is CaseId.KZERO:
        (amp,) = sol.amplitudes
        b, _, _ = _branch_jets(RadialKind.ORDINARY, m, cls.alpha2, r)
        return zero, zero, amp * b

    a1, a2, a3 = sol.branch_amplitudes
    K = cls.axial_wavenumber
    u_r, u_t, u_z = zero.copy(), zero.copy(), zero.copy()
    for amp, kind, alpha, gamma in ((a1, cls.kind1, cls.alpha1, cls.gamma1), (a2, cls.kind2, cls.alpha2, cls.gamma2)):
        if amp == 0.0:
            continue
        b, db, mb_r = _branch_jets(kind, m, alpha, r)
        u_r += amp * db
        u_t += amp * mb_r
        u_z += K * gamma * amp * b
    if a3 != 0.0:
        _, db, mb_r = _branch_jets(cls.kind2, m, cls.alpha2, r)
        s = ex.bvp.third_column_sign * a3
        u_r += s * mb_r
        u_t += s * db
    return u_r, u_t, u_z


def analytic_pde_residual(
    sol: ModalSolution,
    cls: CaseClassification,
    ex: ExcitationSpec,
    mg: MaterialGeometry,
    p: Point,
) -> np.ndarray:
    """Residual vector (r, theta, z components) from exact derivatives, Pa/m; needs r > 0."""
    p.check_inside(mg)
    if p.r <= 0.0:
        raise DomainError("the cylindrical form of the operator needs r > 0")
    r, m, K = p.r, ex.m, cls.axial_wavenumber
    u_r, u_t, u_z = radial_jets(sol, cls, ex, r)

    t1 = (u_r[0] - m * u_t[0]) / r
    dt1 = (u_r[1] - m * u_t[1]) / r - t1 / r
    div = u_r[1] + t1 - K * u_z[0]
    ddiv = u_r[2] + dt1 - K * u_z[1]
    r2 = r * r
    lap_r = u_r[2] + u_r[1] / r - (m * m + 1) * u_r[0] / r2 + 2 * m * u_t[0] / r2 - K * K * u_r[0]
    lap_t = u_t[2] + u_t[1] / r - (m * m + 1) * u_t[0] / r2 + 2 * m * u_r[0] / r2 - K * K * u_t[0]
    lap_z = u_z[2] + u_z[1] / r - m * m * u_z[0] / r2 - K * K * u_z[0]

    lm, mu, rw2 = mg.lam + mg.mu, mg.mu, mg.rho * ex.omega ** 2
    res_r = lm * ddiv + mu * lap_r + rw2 * u_r[0]
    res_t = lm * m * div / r + mu * lap_t + rw2 * u_t[0]
    res_z = lm * K * div + mu * lap_z + rw2 * u_z[0]

    a_r, a_t = angular_factors(ex.bvp, m, p.theta)
    s, c = math.sin(K * p.z), math.cos(K * p.z)
    return np.array([res_r * a_r * s, res_t * a_t * s, res_z * a_r * c])


def _normalized(res: np.ndarray, sol, cls, ex, mg: MaterialGeometry, p: Point) -> float:
    """||res||_inf / (rho w^2 ||u||_inf) at the sample point."""
    u_norm = max(abs(v) for v in stationary_displacement(sol, cls, ex, mg, p))
    scale = mg.rho * ex.omega ** 2 * u_norm
    peak = float(np.max(np.abs(res)))
    return peak / scale if scale > 0 else peak


def normalized_pde_residual(sol, cls, ex, mg: MaterialGeometry, p: Point, h: float) -> float:
    return _normalized(pde_residual(sol, cls, ex, mg, p, h), sol, cls, ex, mg, p)


def normalized_analytic_pde_residual(sol, cls, ex, mg: MaterialGeometry, p: Point) -> float:
    return _normalized(analytic_pde_residual(sol, cls, ex, mg, p), sol, cls, ex, mg, p)
