import math

import mpmath
import numpy as np
import pytest

from src.analysis.case_classifier import CaseId, classify
from src.analysis.coefficient_solver import (
    SystemShape, cofactor_coefficients, assemble, assemble_axisymmetric_system, assemble_system,
    assemble_torsional_system, compute_entries, reported_determinant, solve, solve_by_elimination,
    solve_closed_form, solve_k0, system_determinant,
)
from src.analysis.linalg import row_scaled
from src.analysis.special_functions import bessel, besselJ
from src.core.errors import ContractError, RoutingError, SingularConfigurationError

# one frequency per case for k = 1: Case1, Case3, Case2
CASE_FREQS = [(5000.0, CaseId.CASE1), (15000.0, CaseId.CASE3), (25000.0, CaseId.CASE2)]
SWEEP_FREQS = np.linspace(500.0, 60000.0, 37)


def _well_conditioned(system) -> bool:
    return np.linalg.cond(row_scaled(system.matrix)) <= 1e4


@pytest.mark.parametrize("f_hz, case", CASE_FREQS)
def test_entries_match_independent_mpmath_evaluation(steel, excite, f_hz, case):
    mpmath.mp.dps = 40
    ex = excite("BVP1", 2, 1, f_hz)
    cls = classify(steel, 2, 1, ex.omega)
    assert cls.case_id is case
    e = compute_entries(cls, ex, steel)

    lam, mu, rho = (mpmath.mpf(v) for v in (steel.lam, steel.mu, steel.rho))
    R, L = mpmath.mpf(steel.radius), mpmath.mpf(steel.length)
    w = mpmath.mpf(ex.omega)
    K2 = (mpmath.pi / L) ** 2
    d, s = rho * w ** 2 / (lam + 2 * mu), rho * w ** 2 / mu
    gamma2 = 1 - s / K2
    m = 2

    def branch(shift, modified, gamma):
        alpha = mpmath.sqrt(abs(K2 - shift))
        B = mpmath.besseli if modified else mpmath.besselj
        if modified:
            lead = lam * (alpha ** 2 - gamma * K2) + 2 * mu * alpha ** 2
        else:
            lead = -(lam * (alpha ** 2 + gamma * K2) + 2 * mu * alpha ** 2)
        return alpha, B, lead

    a1, B1, lead1 = branch(d, case is not CaseId.CASE2, 1)
    a2, B2, lead2 = branch(s, case is CaseId.CASE1, gamma2)
    sign2 = 1 if case is CaseId.CASE1 else -1
    expected = {
        "f": (lead1 * R / (2 * mu) + m * (m - 1) / R) * B1(m, a1 * R),
        "g": (lead2 * R / (2 * mu) + m * (m - 1) / R) * B2(m, a2 * R),
        "h": (sign2 * a2 ** 2 * R / 2 + m * (m - 1) / R) * B2(m, a2 * R),
        "p": (m / R) * B1(m, a1 * R),
        "q": (m / R) * B2(m, a2 * R),
        "v": a1 * B1(m + 1, a1 * R),
        "w": a2 * B2(m + 1, a2 * R),
    }
    for name, value in expected.items():
        got = getattr(e, name)
        assert abs(got - float(value)) <= 1e-12 * abs(float(value)), name


def test_entry_symbols_follow_branch_kind(steel, excite):
    ex = excite("BVP2", 1, 1, 15000.0)
    e = compute_entries(classify(steel, 1, 1, ex.omega), ex, steel)
    # Case3: I branch lower case, J branch upper case
    assert set(e.symbols()) == {"f_1", "p_1", "v_2", "G_1", "H_1", "Q_1", "W_2"}


def test_p_and_q_are_scaled_radial_bases(steel, excite):
    for m in (1, 2, 3):
        ex = excite("BVP1", m, 2, 20000.0)
        cls = classify(steel, m, 2, ex.omega)
        e = compute_entries(cls, ex, steel)
        R = steel.radius
        assert math.isclose(e.p * R / m, bessel(cls.kind1, m, cls.alpha1 * R), rel_tol=1e-15)
        assert math.isclose(e.q * R / m, bessel(cls.kind2, m, cls.alpha2 * R), rel_tol=1e-15)
        assert math.isclose(e.w, cls.alpha2 * bessel(cls.kind2, m + 1, cls.alpha2 * R), rel_tol=1e-15)


def test_bvp1_and_bvp2_differ_in_third_column_sign(steel, excite):
    ex1, ex2 = excite("BVP1", 2, 1, 15000.0), excite("BVP2", 2, 1, 15000.0)
    cls = classify(steel, 2, 1, ex1.omega)
    m1, m2 = assemble_system(cls, ex1, steel).matrix, assemble_system(cls, ex2, steel).matrix
    assert np.array_equal(m1[:, :2], m2[:, :2])
    assert np.array_equal(m1[:, 2], -m2[:, 2])


@pytest.mark.parametrize("bvp", ["BVP1", "BVP2"])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_grouped_determinant_equals_reported_cofactor_determinant(steel, excite, bvp, m):
    for f in SWEEP_FREQS:
        ex = excite(bvp, m, 1, float(f))
        cls = classify(steel, m, 1, ex.omega)
        if cls.is_singular:
            continue
        system = assemble(cls, ex, steel)
        grouped = cofactor_coefficients(system.entries).determinant
        bound = float(np.prod(np.abs(system.matrix).sum(axis=1)))
        assert abs(grouped - reported_determinant(system)) <= 1e-12 * bound


@pytest.mark.parametrize("bvp", ["BVP1", "BVP2"])
@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_closed_form_agrees_with_elimination(steel, excite, bvp, m):
    compared = 0
    for f in SWEEP_FREQS:
        ex = excite(bvp, m, 2, float(f))
        cls = classify(steel, m, 2, ex.omega)
        if cls.is_singular:
            continue
        system = assemble(cls, ex, steel)
        if not _well_conditioned(system):
            continue
        a = np.array(solve_closed_form(system, cls, ex).amplitudes)
        b = np.array(solve_by_elimination(system, cls, ex).amplitudes)
        assert np.max(np.abs(a - b)) <= 1e-11 * np.max(np.abs(b))
        compared += 1
    assert compared >= 5


def test_closed_form_solves_the_assembled_system(steel, excite):
    for f, _ in CASE_FREQS:
        ex = excite("BVP2", 2, 1, f)
        cls = classify(steel, 2, 1, ex.omega)
        system = assemble(cls, ex, steel)
        x = np.array(solve_closed_form(system, cls, ex).amplitudes)
        r = system.matrix @ x - system.rhs
        scale = np.max(np.abs(system.matrix)) * np.max(np.abs(x)) + np.max(np.abs(system.rhs))
        assert np.max(np.abs(r)) <= 1e-12 * scale


def _cofactor_scale(e, coeffs):
    """Bound on |cofactor| and |D| from the magnitudes of the terms that form them."""
    c_max = max(abs(v) for row in coeffs.c for v in row)
    z = 2.0 * (abs(e.p) + abs(e.v)) + abs(1.0 + e.gamma2) * (abs(e.q) + abs(e.w)) + abs(e.q)
    return c_max, c_max * z


@pytest.mark.parametrize("k", [1, 3, 5])
def test_reduced_m1_forms_match_general_forms(steel, excite, k):
    seen = set()
    for f in np.linspace(2000.0, 120000.0, 30):
        ex = excite("BVP1", 1, k, float(f))
        cls = classify(steel, 1, k, ex.omega)
        if cls.is_singular:
            continue
        seen.add(cls.case_id)
        e = compute_entries(cls, ex, steel)
        reduced, general = cofactor_coefficients(e, reduced_m1=True), cofactor_coefficients(e)
        c_max, d_max = _cofactor_scale(e, general)
        assert abs(reduced.determinant - general.determinant) <= 1e-13 * d_max
        assert np.allclose(reduced.c, general.c, rtol=1e-13, atol=1e-13 * c_max)
    assert seen == {CaseId.CASE1, CaseId.CASE2, CaseId.CASE3}


def test_reduced_m1_forms_need_m1(steel, excite):
    ex2 = excite("BVP1", 2, 1, 15000.0)
    e2 = compute_entries(classify(steel, 2, 1, ex2.omega), ex2, steel)
    with pytest.raises(RoutingError):
        cofactor_coefficients(e2, reduced_m1=True)


def test_delta_signs(steel, excite):
    _, sol1 = solve(excite("BVP1", 2, 1, 15000.0), steel)
    _, sol2 = solve(excite("BVP2", 2, 1, 15000.0), steel)
    assert sol1.delta_signs == (-1, 1, 1)
    assert sol2.delta_signs == (-1, 1, -1)


def test_zero_excitation_gives_zero_amplitudes(steel, excite):
    for m in (0, 1, 2):
        for bvp in ("BVP1", "BVP2"):
            _, sol = solve(excite(bvp, m, 1, 15000.0, 0.0, 0.0, 0.0), steel)
            assert all(a == 0.0 for a in sol.amplitudes)


def test_amplitudes_scale_linearly(steel, excite):
    ex = excite("BVP2", 3, 2, 33000.0, 1e5, -3e4, 2e5)
    _, sol = solve(ex, steel)
    _, doubled = solve(ex.scaled(2.0), steel)
    assert np.allclose(doubled.amplitudes, 2.0 * np.array(sol.amplitudes), rtol=1e-14, atol=0.0)
    assert doubled.determinant == sol.determinant


def test_axisymmetric_and_torsional_shapes(steel, excite):
    ex2 = excite("BVP2", 0, 1, 25000.0)
    cls = classify(steel, 0, 1, ex2.omega)
    sys2 = assemble(cls, ex2, steel)
    assert sys2.shape is SystemShape.AXISYMMETRIC and sys2.matrix.shape == (2, 2)
    _, sol2 = solve(ex2, steel)
    assert len(sol2.amplitudes) == 2
    assert sol2.branch_amplitudes[2] == 0.0

    ex1 = excite("BVP1", 0, 1, 25000.0)
    sys1 = assemble(cls, ex1, steel)
    assert sys1.shape is SystemShape.TORSIONAL
    _, sol1 = solve(ex1, steel)
    assert math.isclose(sol1.amplitudes[0], sys1.rhs[0] / sys1.matrix[0, 0], rel_tol=1e-15)
    assert sol1.branch_amplitudes[:2] == (0.0, 0.0)


def test_k_zero_solution(steel, excite):
    ex = excite("BVP2", 0, 0, 12000.0, c=2e5)
    cls, sol = solve(ex, steel)
    assert cls.case_id is CaseId.KZERO
    a = cls.alpha2
    expected = -2e5 / (steel.mu * a * besselJ(1, a * steel.radius))
    assert math.isclose(sol.amplitudes[0], expected, rel_tol=1e-13)
    assert math.isclose(system_determinant(cls, ex, steel), sol.determinant, rel_tol=1e-15)
    # no axial traction: nothing is driven
    _, quiet = solve(excite("BVP1", 2, 0, 12000.0, c=0.0), steel)
    assert quiet.amplitudes == (0.0,)
    with pytest.raises(ContractError):
        sol.branch_amplitudes


def test_routing_errors(steel, excite):
    ex0 = excite("BVP2", 0, 1, 15000.0)
    cls0 = classify(steel, 0, 1, ex0.omega)
    with pytest.raises(RoutingError):
        assemble_system(cls0, ex0, steel)
    with pytest.raises(RoutingError):
        assemble_torsional_system(cls0, ex0, steel)
    with pytest.raises(RoutingError):
        assemble_axisymmetric_system(cls0, excite("BVP1", 0, 1, 15000.0), steel)
    with pytest.raises(RoutingError):
        solve_k0(ex0, steel)
    exk = excite("BVP2", 1, 0, 15000.0)
    with pytest.raises(RoutingError):
        compute_entries(classify(steel, 1, 0, exk.omega), exk, steel)


def test_mismatched_classification_is_contract_error(steel, excite):
    ex = excite("BVP2", 2, 1, 15000.0)
    other = classify(steel, 2, 1, excite("BVP2", 2, 1, 16000.0).omega)
    with pytest.raises(ContractError):
        compute_entries(other, ex, steel)


def test_singular_configuration_refused(steel, excite):
    K = steel.axial_wavenumber(1)
    f = K * math.sqrt(steel.mu / steel.rho) / (2 * math.pi)
    with pytest.raises(SingularConfigurationError):
        solve(excite("BVP1", 1, 1, f), steel)


def test_generic_method_and_unknown_method(steel, excite):
    ex = excite("BVP1", 2, 1, 25000.0)
    _, sol = solve(ex, steel, method="generic")
    assert sol.method == "generic"
    with pytest.raises(ValueError):
        solve(ex, steel, method="lu")
