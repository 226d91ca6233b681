import math

import pytest
from pydantic import ValidationError

from src.core.errors import DomainError
from src.models.excitation import Bvp, ExcitationSpec, omega_from_hz
from src.models.material import MaterialGeometry, lame_from_young_poisson, young_poisson_from_lame


def test_young_poisson_conversion_for_steel():
    lam, mu = lame_from_young_poisson(1.9e11, 0.30)
    assert math.isclose(lam, 1.9e11 * 0.3 / (1.3 * 0.4), rel_tol=1e-14)
    assert math.isclose(mu, 1.9e11 / 2.6, rel_tol=1e-14)


def test_quarter_poisson_gives_equal_lame_constants():
    lam, mu = lame_from_young_poisson(100e9, 0.25)
    assert math.isclose(lam, 40e9, rel_tol=1e-14)
    assert math.isclose(mu, 40e9, rel_tol=1e-14)


def test_zero_poisson_ratio():
    lam, mu = lame_from_young_poisson(2.0e11, 0.0)
    assert lam == 0.0
    assert mu == 1.0e11


@pytest.mark.parametrize("E, nu", [(1e11, 0.5), (1e11, 0.6), (1e11, -1.0), (-1e11, 0.3), (math.nan, 0.3)])
def test_invalid_young_poisson(E, nu):
    with pytest.raises(DomainError):
        lame_from_young_poisson(E, nu)


def test_lame_round_trip():
    E, nu = young_poisson_from_lame(*lame_from_young_poisson(1.9e11, 0.3))
    assert math.isclose(E, 1.9e11, rel_tol=1e-14)
    assert math.isclose(nu, 0.3, rel_tol=1e-14)


def test_material_derived_quantities(steel):
    assert steel.p_modulus == steel.lam + 2 * steel.mu
    assert steel.dilatational_speed > steel.shear_speed
    assert math.isclose(steel.axial_wavenumber(3), 3 * math.pi / 0.15)
    assert steel.axial_wavenumber(0) == 0.0


def test_material_rejects_non_positive_values():
    with pytest.raises(ValidationError):
        MaterialGeometry(lam=1e11, mu=0.0, rho=8000, length=0.15, radius=0.05)
    with pytest.raises(ValidationError):
        MaterialGeometry(lam=1e11, mu=7e10, rho=8000, length=math.inf, radius=0.05)


def test_material_from_presets():
    table = MaterialGeometry.from_preset(
        {"lambda_pa": 1.0962e11, "mu_pa": 7.308e10, "rho": 8000.0, "length_m": 0.15, "radius_m": 0.05}
    )
    assert table.lam == 1.0962e11 and table.radius == 0.05
    ep = MaterialGeometry.from_preset(
        {"young_pa": 1.9e11, "poisson": 0.3, "rho": 8000.0, "length_m": 0.15, "radius_m": 0.05}
    )
    assert math.isclose(ep.mu, 1.9e11 / 2.6)


def test_material_accepts_lambda_alias():
    mg = MaterialGeometry(**{"lambda": 1.0e11, "mu": 7.0e10, "rho": 8000.0, "length": 0.15, "radius": 0.05})
    assert mg.lam == 1.0e11


def test_excitation_forcing_and_copies():
    ex = ExcitationSpec(bvp=Bvp.BVP1, m=0, k=1, omega=omega_from_hz(1000.0), amp_a=1.0, amp_c=1.0)
    # m = 0 BVP1 is torsional: only B drives it
    assert not ex.is_forced
    assert ex.scaled(2.0).amp_a == 2.0
    assert math.isclose(ex.at_frequency(2000.0).frequency_hz, 2000.0)
    assert Bvp.parse("2") is Bvp.BVP2 and Bvp.parse("bvp1") is Bvp.BVP1
    with pytest.raises(ValueError):
        Bvp.parse("3")
    with pytest.raises(ValidationError):
        ExcitationSpec(bvp=Bvp.BVP2, m=-1, k=1, omega=1.0)
