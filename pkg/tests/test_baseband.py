import numpy as np
import pytest

from sarlrs.baseband import LowpassFilter, from_baseband, to_baseband
from sarlrs.errors import CarrierAliased
from sarlrs.scenario import Pulse
from sarlrs.simulate import fast_times, synthesize_baseband_direct, synthesize_downramped

from conftest import make_scenario, moving_target, stationary_target


def _transform(sc, D):
    t = fast_times(sc)
    return to_baseband(D, sc.pulse, sc.sampling.delta_t, t0=t[0])


def test_zero_matrix_maps_to_zero():
    sc = make_scenario(n=2)
    out = to_baseband(np.zeros((3, 64)), sc.pulse, sc.sampling.delta_t)
    assert not np.any(out)


def test_matches_direct_baseband_model():
    sc = make_scenario([stationary_target()], n=20)
    D = synthesize_downramped(sc)
    DB = _transform(sc, D)
    ref = synthesize_baseband_direct(sc)
    assert np.max(np.abs(DB - ref)) <= 1e-3 * np.max(np.abs(ref))


def test_frobenius_energy_doubles():
    sc = make_scenario([stationary_target(), moving_target(12.0, (6.0, -2.0, 0.0))],
                       n=30)
    D = synthesize_downramped(sc)
    DB = _transform(sc, D)
    ratio = np.linalg.norm(DB) ** 2 / np.linalg.norm(D) ** 2
    assert 1.98 <= ratio <= 2.02


def test_round_trip_is_lossless():
    sc = make_scenario([stationary_target(), moving_target(15.0)], n=30)
    D = synthesize_downramped(sc)
    t = fast_times(sc)
    DB = to_baseband(D, sc.pulse, sc.sampling.delta_t, t0=t[0])
    back = from_baseband(DB, sc.pulse, sc.sampling.delta_t, t0=t[0])
    assert np.max(np.abs(back - D)) <= 1e-6 * np.max(np.abs(D))


def test_filter_is_a_projection():
    sc = make_scenario([stationary_target()], n=10)
    D = synthesize_downramped(sc)
    t = fast_times(sc)
    dt = sc.sampling.delta_t
    once = to_baseband(D, sc.pulse, dt, t0=t[0])
    # re-filter: demodulating the reconstruction must reproduce the same matrix
    twice = to_baseband(from_baseband(once, sc.pulse, dt, t0=t[0]),
                        sc.pulse, dt, t0=t[0])
    assert np.max(np.abs(twice - once)) <= 1e-9 * np.max(np.abs(once))


def test_linearity():
    sc = make_scenario([stationary_target()], n=10)
    t = fast_times(sc)
    dt = sc.sampling.delta_t
    rng = np.random.default_rng(3)
    A = rng.standard_normal((11, t.size))
    B = rng.standard_normal((11, t.size))
    lhs = to_baseband(A + 2.0 * B, sc.pulse, dt, t0=t[0])
    rhs = (to_baseband(A, sc.pulse, dt, t0=t[0])
           + 2.0 * to_baseband(B, sc.pulse, dt, t0=t[0]))
    assert np.allclose(lhs, rhs, atol=1e-12)


def test_degenerate_zero_carrier_reconstruction():
    pulse = Pulse(1.0, 0.1)  # w0 effectively unused by from_baseband at t=0 grid
    DB = np.ones((2, 8))
    out = from_baseband(DB, Pulse(1e-30, 0.1), 1.0)
    assert np.allclose(out, DB.real)


def test_carrier_aliasing_rejected():
    pulse = Pulse(2 * np.pi * 2e8, 2 * np.pi * 1e7)
    with pytest.raises(CarrierAliased):
        to_baseband(np.ones((2, 16)), pulse, delta_t=1e-8)


def test_passband_must_be_positive():
    from sarlrs.errors import ConfigError
    with pytest.raises(ConfigError):
        LowpassFilter(passband_half_width=-1.0)
