import math

import numpy as np
import pytest
from scipy import integrate

from betapoly.quadrature import gauss_legendre_panels, log_cosh, log_cosh_power_primitive, tanh_sinh


def test_tanh_sinh_smooth():
    val, err, ok, _ = tanh_sinh(lambda x, da, db: np.exp(x), 0.0, 1.0)
    assert ok
    assert val == pytest.approx(math.e - 1, rel=1e-14)


def test_tanh_sinh_endpoint_singularity():
    # int_0^1 x^-0.5 dx = 2, written through the left distance
    val, _, ok, _ = tanh_sinh(lambda x, da, db: da ** -0.5, 0.0, 1.0)
    assert ok
    assert val == pytest.approx(2.0, rel=1e-12)


def test_tanh_sinh_cancelling_integral_converges_against_mass():
    val, err, ok, scale = tanh_sinh(lambda x, da, db: np.sin(x), -1.0, 1.0)
    assert ok
    assert abs(val) < 1e-14
    assert scale > 0.5


def test_tanh_sinh_rejects_empty_interval():
    with pytest.raises(ValueError):
        tanh_sinh(lambda x, da, db: x, 1.0, 1.0)


def test_gauss_legendre_panels():
    val, _, ok, _ = gauss_legendre_panels(lambda t: np.exp(-t) * np.cos(3 * t), 40.0, 8)
    assert ok
    assert val == pytest.approx(0.1, rel=1e-12)


def test_log_cosh_large_arguments():
    t = np.array([0.0, 1.0, 800.0])
    assert log_cosh(t)[0] == 0.0
    assert log_cosh(t)[1] == pytest.approx(math.log(math.cosh(1.0)), rel=1e-15)
    assert log_cosh(t)[2] == pytest.approx(800.0 - math.log(2.0), rel=1e-15)


@pytest.mark.parametrize("power", [-3.5, -1.0, 0.5, 1.0, 2.0, 4.0])
def test_log_cosh_power_primitive_against_quad(power):
    t = np.array([0.1, 0.7, 2.0, 5.0])
    got = np.exp(log_cosh_power_primitive(t, power))
    want = [integrate.quad(lambda u: math.cosh(u) ** power, 0, x, epsabs=0, epsrel=1e-13)[0] for x in t]
    np.testing.assert_allclose(got, want, rtol=1e-12)


def test_log_cosh_power_primitive_zero_power_and_validation():
    t = np.array([0.5, 2.0])
    np.testing.assert_allclose(np.exp(log_cosh_power_primitive(t, 0.0)), t)
    with pytest.raises(ValueError):
        log_cosh_power_primitive(np.array([2.0, 1.0]), 1.0)
