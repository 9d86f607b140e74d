"""Tests for physical constants, parameter records, and the effective model."""

import math

import numpy as np
import pytest

from crossdamp import ModelParams, PhysicalParams, bose_occupation, effective_model

# 40Ca+ pair: m = 6.642e-26 kg, q = 1.602e-19 C, d = 30 um, omega/2pi = 1 MHz.
# Frozen from direct arithmetic k q^2 / (m w d^3) with CODATA constants.
CA_COUPLING = -20470.286724541496


def ca_params():
    return PhysicalParams(mass=6.642e-26, charge=1.602e-19, separation=30e-6,
                          trap_frequency=2 * math.pi * 1e6)


def test_effective_model_ca_fixture():
    m = effective_model(ca_params())
    assert m.coupling == pytest.approx(CA_COUPLING, rel=1e-12)
    assert m.omega0 == pytest.approx(2 * math.pi * 1e6 - CA_COUPLING, rel=1e-12)


def test_coupling_vanishes_at_large_separation():
    p = ca_params()
    far = PhysicalParams(mass=p.mass, charge=p.charge, separation=1.0,
                         trap_frequency=p.trap_frequency)
    m = effective_model(far)
    assert abs(m.coupling) < 1e-9
    assert m.omega0 == pytest.approx(p.trap_frequency, rel=1e-12)


def test_inverse_cube_law():
    p = ca_params()
    doubled = PhysicalParams(mass=p.mass, charge=p.charge,
                             separation=2 * p.separation,
                             trap_frequency=p.trap_frequency)
    ratio = effective_model(p).coupling / effective_model(doubled).coupling
    assert ratio == pytest.approx(8.0, rel=1e-12)


def test_shift_identity():
    # omega0 - omega = -coupling exactly, both being k q^2 / (m w d^3)
    p = ca_params()
    m = effective_model(p)
    assert m.omega0 - p.trap_frequency == pytest.approx(-m.coupling, rel=1e-12)


def test_effective_model_fills_reservoir_occupation():
    p = ca_params()
    warm = PhysicalParams(mass=p.mass, charge=p.charge, separation=p.separation,
                          trap_frequency=p.trap_frequency, temperature_ratio=0.10)
    m = effective_model(warm, gamma=1.0, gamma12=0.5)
    assert m.nbar == pytest.approx(bose_occupation(0.10), rel=1e-14)
    assert (m.gamma, m.gamma12) == (1.0, 0.5)


@pytest.mark.parametrize("kwargs", [
    dict(mass=0.0), dict(mass=-1e-26), dict(charge=0.0),
    dict(separation=0.0), dict(trap_frequency=-1.0),
    dict(temperature_ratio=0.0),
])
def test_physical_params_validation(kwargs):
    base = dict(mass=6.642e-26, charge=1.602e-19, separation=30e-6,
                trap_frequency=2 * math.pi * 1e6)
    base.update(kwargs)
    with pytest.raises(ValueError):
        PhysicalParams(**base)


def test_bose_occupation_reference_values():
    assert bose_occupation(0.10) == pytest.approx(9.50833, abs=1e-5)
    assert bose_occupation(1.0) == pytest.approx(0.581977, abs=1e-6)


def test_bose_occupation_limits_and_monotonicity():
    assert bose_occupation(50.0) < 1e-20
    ratios = np.linspace(0.05, 5.0, 40)
    values = [bose_occupation(r) for r in ratios]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_bose_occupation_rejects_nonpositive_ratio():
    for ratio in (0.0, -0.1):
        with pytest.raises(ValueError):
            bose_occupation(ratio)


def test_model_params_cross_damping_bound():
    ModelParams(omega0=1.0, coupling=-0.5, gamma=0.3, gamma12=0.3, nbar=0.1)
    with pytest.raises(ValueError):
        ModelParams(omega0=1.0, coupling=-0.5, gamma=0.3, gamma12=0.31, nbar=0.1)
    with pytest.raises(ValueError):
        ModelParams(omega0=1.0, coupling=-0.5, gamma=0.3, gamma12=-0.01, nbar=0.1)
    with pytest.raises(ValueError):
        ModelParams(omega0=1.0, coupling=-0.5, gamma=0.3, gamma12=0.1, nbar=-0.2)
