import math

import mpmath
import pytest
from scipy import special

from src.analysis.special_functions import (
    RadialKind, bessel, bessel_derivative, bessel_over_power, besselI, besselI_scaled, besselJ,
)
from src.core.errors import DomainError, RangeError

# straddle every algorithm switch (series / Miller / asymptotic)
J_ARGS = [0.0, 1e-8, 0.5, 1.9, 2.0, 2.1, 7.3, 15.0, 33.3, 49.9, 50.1, 80.0, 200.0]
I_ARGS = [0.0, 1e-8, 1.0, 5.5, 11.9, 12.1, 30.0, 49.0, 51.0, 100.0, 600.0]


@pytest.mark.parametrize("n", range(0, 6))
def test_besselJ_matches_mpmath(n):
    for x in J_ARGS:
        expected = float(mpmath.besselj(n, x))
        assert abs(besselJ(n, x) - expected) <= 1e-13, (n, x)


@pytest.mark.parametrize("n", range(0, 6))
def test_besselI_matches_mpmath(n):
    for x in I_ARGS:
        expected = float(mpmath.besseli(n, x))
        got = besselI(n, x)
        if expected == 0.0:
            assert got == 0.0
        else:
            assert abs(got - expected) <= 1e-12 * abs(expected), (n, x)


def test_scaled_I_against_scipy_for_large_arguments():
    for n in (0, 1, 4):
        for x in (800.0, 1000.0, 5.0e4):
            assert math.isclose(besselI_scaled(n, x), special.ive(n, x), rel_tol=1e-12)


def test_besselI_overflow_is_range_error():
    assert math.isfinite(besselI(0, 700.0))
    with pytest.raises(RangeError) as exc:
        besselI(0, 800.0)
    assert exc.value.x == 800.0


def test_three_term_recurrences():
    for x in (0.7, 3.0, 9.5, 42.0, 75.0):
        for n in range(1, 5):
            lhs_j = besselJ(n - 1, x) + besselJ(n + 1, x)
            assert abs(lhs_j - 2 * n / x * besselJ(n, x)) <= 1e-12
            lhs_i = besselI(n - 1, x) - besselI(n + 1, x)
            assert math.isclose(lhs_i, 2 * n / x * besselI(n, x), rel_tol=1e-11)


def test_derivative_matches_central_difference():
    h = 1e-5
    for kind in RadialKind:
        for n in range(0, 4):
            for x in (0.3, 2.5, 8.0):
                fd = (bessel(kind, n, x + h) - bessel(kind, n, x - h)) / (2 * h)
                assert abs(bessel_derivative(kind, n, x) - fd) <= 1e-8 * max(1.0, abs(fd))


def test_first_zero_of_J0():
    assert abs(besselJ(0, 2.404825557695773)) < 1e-15


def test_values_at_origin():
    assert besselJ(0, 0.0) == 1.0 and besselI(0, 0.0) == 1.0
    assert besselJ(3, 0.0) == 0.0 and besselI(2, 0.0) == 0.0


def test_bessel_over_power_axis_limit():
    for kind in RadialKind:
        assert bessel_over_power(kind, 1, 1, 0.0) == 0.5
        assert bessel_over_power(kind, 2, 2, 0.0) == 1.0 / 8.0
        assert bessel_over_power(kind, 3, 1, 0.0) == 0.0
        # continuity off the axis
        assert math.isclose(bessel_over_power(kind, 1, 1, 1e-6), 0.5, rel_tol=1e-10)
        with pytest.raises(DomainError):
            bessel_over_power(kind, 0, 1, 0.0)


def test_radial_kind_sign():
    assert RadialKind.MODIFIED.sign == 1.0
    assert RadialKind.ORDINARY.sign == -1.0


@pytest.mark.parametrize("n, x", [(0, -1.0), (-1, 1.0), (0, math.nan), (0, math.inf), (1.5, 1.0), (True, 1.0)])
def test_invalid_arguments_raise_domain_error(n, x):
    with pytest.raises(DomainError):
        besselJ(n, x)
    with pytest.raises(DomainError):
        besselI(n, x)
