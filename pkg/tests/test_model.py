import math

import numpy as np
import pytest
from scipy.optimize import brentq

from levelglance import (DomainError, ModelSpec, adiabatic_energy, detuning, field_vector,
                         nonadiabatic_coupling, rotating_phase, scale_parameters)


def test_scale_parameters():
    assert scale_parameters(0.5, 0.34) == pytest.approx(0.68, rel=1e-15)
    assert scale_parameters(2.0, 2.0) == 1.0


@pytest.mark.parametrize("beta, omega0", [(0, 1), (1, 0), (-1, 1), (1, -2)])
def test_scale_parameters_rejects_nonpositive(beta, omega0):
    with pytest.raises(DomainError):
        scale_parameters(beta, omega0)


@pytest.mark.parametrize("n, alpha", [(0, 1.0), (-2, 1.0), (2.5, 1.0), (2, -0.1),
                                      (2, math.nan), (2, math.inf)])
def test_modelspec_validation(n, alpha):
    with pytest.raises(DomainError):
        ModelSpec(n, alpha)


def test_modelspec_from_raw_and_parity():
    spec = ModelSpec.from_raw(4, beta=0.5, omega0=0.34)
    assert spec.n_power == 4 and spec.alpha == pytest.approx(0.68)
    assert spec.is_glancing
    assert not ModelSpec(1, 1.0).is_glancing
    assert not ModelSpec(3, 1.0).is_glancing


def test_detuning_values():
    assert detuning(ModelSpec(2, 1.0), 2.0) == 4.0
    assert detuning(ModelSpec(3, 1.0), -2.0) == -8.0
    taus = np.linspace(-3, 3, 61)
    d = detuning(ModelSpec(4, 0.5), taus)
    assert np.all(d >= 0)
    assert np.allclose(d, d[::-1])
    assert np.count_nonzero(d == 0) == 1


def test_adiabatic_energy_identity():
    spec = ModelSpec(6, 0.7)
    taus = np.linspace(-1.3, 1.3, 101)
    e = adiabatic_energy(spec, taus)
    d = detuning(spec, taus)
    assert np.allclose((e * e - d * d) / spec.alpha ** 2, 1.0, rtol=0, atol=1e-14)
    assert adiabatic_energy(ModelSpec(2, 1.0), 0.0) == 1.0


def test_nonadiabatic_coupling_examples():
    spec = ModelSpec(2, 1.0)
    assert nonadiabatic_coupling(spec, 1.0) == pytest.approx(0.5, abs=1e-15)
    assert nonadiabatic_coupling(spec, -1.0) == pytest.approx(-0.5, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_nonadiabatic_coupling_is_half_mixing_derivative(n):
    spec = ModelSpec(n, 0.8)
    h = 1e-5
    for tau in np.linspace(-1.5, 1.5, 13):
        fd = 0.5 * (math.atan((tau + h) ** n / 0.8) - math.atan((tau - h) ** n / 0.8)) / (2 * h)
        assert nonadiabatic_coupling(spec, tau) == pytest.approx(fd, abs=1e-8)


def test_rotating_phase_derivative_is_detuning():
    spec = ModelSpec(4, 1.0)
    h = 1e-3
    phi = lambda t: rotating_phase(spec, t)
    for tau in np.linspace(-5, 5, 41):
        # fourth-order central difference
        fd = (8 * (phi(tau + h) - phi(tau - h)) - (phi(tau + 2 * h) - phi(tau - 2 * h))) / (12 * h)
        assert fd == pytest.approx(detuning(spec, tau), rel=1e-8, abs=1e-8)


def test_field_vector():
    spec = ModelSpec(2, 0.5)
    assert np.allclose(field_vector(spec, 0.0), [1.0, 0.0, 0.0])
    tau = brentq(lambda t: 2 * rotating_phase(spec, t) - math.pi / 2, 0.1, 3.0, xtol=1e-15)
    assert np.allclose(field_vector(spec, tau), [0.0, 1.0, 0.0], atol=1e-12)
