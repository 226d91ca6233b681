import math

import pytest

from src.analysis.case_classifier import CaseId, classify, require_solvable
from src.analysis.special_functions import RadialKind
from src.core.errors import DomainError, SingularConfigurationError
from src.models.excitation import omega_from_hz

# with k = 1 the steel cylinder switches Case1 -> Case3 near 10.07 kHz and Case3 -> Case2 near 18.85 kHz


def test_low_frequency_is_case1(steel):
    cls = classify(steel, 1, 1, omega_from_hz(5000.0))
    assert cls.case_id is CaseId.CASE1
    assert cls.kind1 is RadialKind.MODIFIED and cls.kind2 is RadialKind.MODIFIED
    assert cls.gamma2 > 0


def test_middle_band_is_case3(steel):
    cls = classify(steel, 1, 1, omega_from_hz(15000.0))
    assert cls.case_id is CaseId.CASE3
    assert (cls.sigma1, cls.sigma2) == (1.0, -1.0)
    assert cls.gamma2 < 0


def test_high_frequency_is_case2(steel):
    cls = classify(steel, 1, 1, omega_from_hz(25000.0))
    assert cls.case_id is CaseId.CASE2
    assert cls.kind1 is RadialKind.ORDINARY and cls.kind2 is RadialKind.ORDINARY
    assert cls.gamma2 < 0


@pytest.mark.parametrize("f_hz", [5000.0, 15000.0, 25000.0])
def test_radial_wavenumber_identities(steel, f_hz):
    w = omega_from_hz(f_hz)
    cls = classify(steel, 2, 1, w)
    K2 = cls.axial_wavenumber ** 2
    d = steel.rho * w * w / steel.p_modulus
    s = steel.rho * w * w / steel.mu
    assert math.isclose(cls.alpha1 ** 2, abs(K2 - d), rel_tol=1e-12)
    assert math.isclose(cls.alpha2 ** 2, abs(K2 - s), rel_tol=1e-12)
    assert math.isclose(cls.gamma2, 1.0 - s / K2, rel_tol=1e-12)
    assert cls.gamma1 == 1.0
    assert cls.kappa == -K2 and cls.tau == -w * w


def test_k_zero(steel):
    w = omega_from_hz(12000.0)
    cls = classify(steel, 0, 0, w)
    assert cls.case_id is CaseId.KZERO
    assert cls.axial_wavenumber == 0.0
    assert math.isclose(cls.alpha2, math.sqrt(steel.rho * w * w / steel.mu), rel_tol=1e-15)
    assert math.isnan(cls.gamma2)


def test_shear_boundary_is_singular2(steel):
    K = steel.axial_wavenumber(2)
    w = K * math.sqrt(steel.mu / steel.rho)
    cls = classify(steel, 1, 2, w)
    assert cls.case_id is CaseId.SINGULAR2
    assert cls.is_singular
    with pytest.raises(SingularConfigurationError) as exc:
        require_solvable(cls)
    assert exc.value.classification is cls


def test_dilatational_boundary_is_singular1(steel):
    K = steel.axial_wavenumber(1)
    w = K * math.sqrt(steel.p_modulus / steel.rho)
    assert classify(steel, 0, 1, w).case_id is CaseId.SINGULAR1


def test_just_off_the_boundary_is_solvable_but_flagged(steel):
    K = steel.axial_wavenumber(1)
    w = K * math.sqrt(steel.mu / steel.rho) * (1 + 1e-7)
    cls = classify(steel, 1, 1, w)
    assert cls.case_id is CaseId.CASE3
    assert cls.near_boundary
    assert require_solvable(cls) is cls


def test_cases_are_ordered_in_frequency(steel):
    rank = {CaseId.CASE1: 0, CaseId.CASE3: 1, CaseId.CASE2: 2}
    seen = [rank[classify(steel, 1, 3, omega_from_hz(f)).case_id] for f in range(1000, 80001, 1000)]
    assert seen == sorted(seen)
    assert set(seen) == {0, 1, 2}


@pytest.mark.parametrize("m, k, w", [(-1, 1, 1.0), (1, -2, 1.0), (1, 1, 0.0), (1, 1, -5.0), (1, 1, math.nan), (1, 1, math.inf)])
def test_invalid_inputs(steel, m, k, w):
    with pytest.raises(DomainError):
        classify(steel, m, k, w)
