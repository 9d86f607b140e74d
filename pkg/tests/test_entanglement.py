"""Tests for the covariance bridge, the separability invariant, and scans."""

import math

import numpy as np
import pytest

from crossdamp import (
    CovarianceReal,
    ModelParams,
    MomentState,
    SqueezedThermalSpec,
    evolve_y,
    scan,
    to_real_covariance,
    y_invariant,
)
from crossdamp.entanglement import initial_state

from oracles import (
    ppt_entangled,
    ppt_min_eigenvalue,
    random_fock_gaussian,
    tmsv_fock,
)


def tmsv_state(r):
    c = math.cosh(r)
    s = math.sinh(r)
    return MomentState(n1=s * s, n2=s * s, s12=c * s)


def test_vacuum_covariance():
    sigma = to_real_covariance(MomentState())
    assert np.allclose(sigma.matrix, 0.5 * np.eye(4))


def test_thermal_covariance_blocks():
    sigma = to_real_covariance(MomentState(n1=0.8, n2=1.5))
    assert np.allclose(sigma.v1, (0.8 + 0.5) * np.eye(2))
    assert np.allclose(sigma.v2, (1.5 + 0.5) * np.eye(2))
    assert np.allclose(sigma.cross, 0.0)


def test_squeezed_thermal_local_block():
    nbar, r = 0.4, 0.6
    spec = SqueezedThermalSpec(nbar=nbar, r=r)
    state = MomentState(n1=spec.occupation(), m1=spec.anomalous())
    sigma = to_real_covariance(state)
    expected = np.diag([(nbar + 0.5) * math.exp(-2 * r),
                        (nbar + 0.5) * math.exp(+2 * r)])
    assert np.allclose(sigma.v1, expected, atol=1e-12)


def test_unphysical_state_rejected():
    bad = MomentState(n1=0.1, m1=1.0)
    with pytest.raises(ValueError):
        to_real_covariance(bad)


def test_covariance_real_shape_and_symmetry_checks():
    with pytest.raises(ValueError):
        CovarianceReal(np.eye(3))
    asym = np.eye(4)
    asym[0, 1] = 0.3
    with pytest.raises(ValueError):
        CovarianceReal(asym)


def test_product_thermal_y_factorizes():
    rng = np.random.default_rng(6)
    for _ in range(10):
        n1, n2 = rng.uniform(0.0, 3.0, 2)
        res = y_invariant(to_real_covariance(MomentState(n1=n1, n2=n2)))
        assert res.i3 == 0.0 and res.i4 == 0.0
        assert res.y == pytest.approx((res.i1 - 0.25) * (res.i2 - 0.25),
                                      rel=1e-12)
        assert res.y >= 0.0
        assert not res.entangled


def test_tmsv_y_closed_form_and_boundary():
    for r in (0.25, 0.5, 1.0):
        res = y_invariant(to_real_covariance(tmsv_state(r)))
        assert res.y == pytest.approx(-0.25 * math.sinh(2 * r) ** 2, rel=1e-10)
        assert res.entangled
    boundary = y_invariant(to_real_covariance(tmsv_state(0.0)))
    assert abs(boundary.y) <= 1e-12


def test_tmsv_vs_fock_ppt_oracle():
    dim = 40
    rho = tmsv_fock(0.5, dim=dim)
    assert ppt_min_eigenvalue(rho, dim) < -1e-6


def test_reflection_form_coincides_for_negative_cross_det():
    res_m = y_invariant(to_real_covariance(tmsv_state(0.4)), form="magnitude")
    res_r = y_invariant(to_real_covariance(tmsv_state(0.4)), form="reflection")
    assert res_m.i3 < 0.0
    assert res_r.y == pytest.approx(res_m.y, rel=1e-12)
    with pytest.raises(ValueError):
        y_invariant(to_real_covariance(tmsv_state(0.4)), form="bogus")


def test_y_sign_matches_fock_ppt_on_random_states():
    rng = np.random.default_rng(14)
    for _ in range(8):
        rho, state, dim = random_fock_gaussian(rng)
        y = y_invariant(to_real_covariance(state)).y
        if abs(y) <= 1e-6:
            continue
        assert (y < 0.0) == ppt_entangled(rho, dim)


def test_local_symplectic_invariance():
    rng = np.random.default_rng(8)
    base = to_real_covariance(tmsv_state(0.5)).matrix

    def local_symplectic(phi, r):
        rot = np.array([[math.cos(phi), math.sin(phi)],
                        [-math.sin(phi), math.cos(phi)]])
        squeeze = np.diag([math.exp(-r), math.exp(r)])
        return rot @ squeeze
    y0 = y_invariant(CovarianceReal(base)).y
    for _ in range(10):
        s1 = local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-0.5, 0.5))
        s2 = local_symplectic(rng.uniform(0, 2 * math.pi), rng.uniform(-0.5, 0.5))
        S = np.block([[s1, np.zeros((2, 2))], [np.zeros((2, 2)), s2]])
        sigma = CovarianceReal(0.5 * (S @ base @ S.T + (S @ base @ S.T).T))
        assert y_invariant(sigma).y == pytest.approx(y0, rel=1e-10)


def test_evolve_y_classical_start_never_entangles():
    params = ModelParams(omega0=0.0, coupling=-1.2, gamma=0.5, gamma12=0.5,
                         nbar=0.2)
    t = np.linspace(0.0, 20.0, 200)
    ys = evolve_y(0.35, SqueezedThermalSpec(nbar=2.3, r=0.0), params, t)
    assert np.all(ys >= -1e-12)


def test_evolve_y_continuity():
    params = ModelParams(omega0=0.0, coupling=0.0, gamma=1.0, gamma12=1.0,
                         nbar=1 / (math.exp(5.0) - 1.0))
    t = np.linspace(0.0, 8.0, 400)
    ys = evolve_y(0.05, SqueezedThermalSpec(nbar=0.05, r=2.0), params, t)
    jumps = np.abs(np.diff(ys))
    # no jump wildly exceeding the local variation scale of its neighbors
    for i in range(1, len(jumps) - 1):
        local = max(jumps[i - 1], jumps[i + 1], 1e-9)
        assert jumps[i] <= 10.0 * local


def test_evolve_y_grid_validation():
    params = ModelParams(omega0=0.0, coupling=0.0, gamma=1.0, gamma12=0.5,
                         nbar=0.1)
    spec = SqueezedThermalSpec(nbar=0.1, r=1.0)
    with pytest.raises(ValueError):
        evolve_y(0.1, spec, params, [])
    with pytest.raises(ValueError):
        evolve_y(0.1, spec, params, [1.0, 0.5])
    with pytest.raises(ValueError):
        evolve_y(0.1, spec, params, [-1.0, 0.5])


def test_initial_state_is_product():
    spec = SqueezedThermalSpec(nbar=0.3, r=0.8)
    state = initial_state(0.7, spec)
    assert state.c12 == 0.0 and state.s12 == 0.0
    assert state.n1 == 0.7
    assert state.n2 == pytest.approx(spec.occupation())
    with pytest.raises(ValueError):
        initial_state(-0.1, spec)


def test_squeezed_thermal_spec_validation():
    with pytest.raises(ValueError):
        SqueezedThermalSpec(nbar=-0.1, r=1.0)
    with pytest.raises(ValueError):
        SqueezedThermalSpec(nbar=0.1, r=1.0, theta=0.3)


def test_scan_single_point_matches_evolve_y():
    fixed = {"gamma": 1.0, "coupling": -1.2, "nbar1": 0.35, "nbar2": 0.3,
             "temperature_ratio": 5.0, "r": 2.0}
    axes = {"t": np.array([1.7]), "gamma12_ratio": np.array([1.0])}
    result = scan(axes, fixed)
    params = ModelParams(omega0=0.0, coupling=-1.2, gamma=1.0, gamma12=1.0,
                         nbar=1.0 / (math.exp(5.0) - 1.0))
    direct = evolve_y(0.35, SqueezedThermalSpec(nbar=0.3, r=2.0), params,
                      np.array([1.7]))[0]
    assert result.y[0, 0] == pytest.approx(direct, rel=1e-12)
    rows = list(result.iter_rows())
    assert rows[0][:2] == (1.7, 1.0)


def test_scan_entangled_region_grows_at_lower_temperature():
    # higher ratio means colder reservoir; the entangled-time measure along
    # t must be non-decreasing in the ratio axis
    fixed = {"gamma": 1.0, "coupling": 0.0, "nbar1": 0.05, "nbar2": 0.05,
             "gamma12_ratio": 1.0, "r": 2.0}
    axes = {
        "t": np.linspace(0.0, 6.0, 120),
        "temperature_ratio": np.array([1.0, 2.0, 4.0, 6.0]),
    }
    result = scan(axes, fixed)
    measures = result.entangled.sum(axis=0)
    assert np.all(np.diff(measures) >= 0)
    assert measures[-1] > 0


def test_scan_uncoupled_uncorrelated_plane_stays_separable():
    fixed = {"gamma": 1.0, "coupling": 0.0, "nbar1": 0.05, "nbar2": 0.05,
             "gamma12_ratio": 0.0, "temperature_ratio": 5.0}
    axes = {"t": np.linspace(0.0, 6.0, 60), "r": np.linspace(0.0, 2.0, 10)}
    result = scan(axes, fixed)
    assert not result.entangled.any()


def test_scan_validation():
    fixed = {"gamma": 1.0, "coupling": 0.0, "nbar1": 0.1, "nbar2": 0.1,
             "gamma12_ratio": 1.0, "temperature_ratio": 5.0, "r": 2.0}
    with pytest.raises(ValueError):
        scan({"t": np.array([1.0])}, fixed)
    with pytest.raises(ValueError):
        scan({"t": np.array([1.0]), "bogus": np.array([1.0])}, fixed)
    with pytest.raises(ValueError):
        scan({"t": np.array([1.0]), "r": np.array([1.0])},
             {"gamma": 1.0, "coupling": 0.0})
    missing_t = {k: v for k, v in fixed.items()}
    with pytest.raises(ValueError):
        scan({"gamma12_ratio": np.array([0.5]), "r": np.array([1.0])},
             {"gamma": 1.0, "coupling": 0.0, "nbar1": 0.1, "nbar2": 0.1,
              "temperature_ratio": 5.0})
