"""Down-ramped SAR data matrix synthesis for point-target scenes.

The platform emits one pulse per slow time s_j = j*ds, j = -n/2..n/2, and
records the down-ramped return on a fast-time grid t_l.  Each target
contributes a modulated Gaussian centered at its differential round-trip
delay relative to the reference point (start-stop approximation):

    D[j, l]   = sum_i  sig_i cos(w0 (t_l - dtau_i(s_j))) exp(-B^2 (t_l - dtau_i(s_j))^2 / 2)
    D_B[j, l] = sum_i  sig_i exp(1j w0 dtau_i(s_j))      exp(-B^2 (t_l - dtau_i(s_j))^2 / 2)

D_B is the analytic complex-baseband model; Re{exp(-1j w0 t_l) D_B} == D.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import GateTooNarrow
from .scenario import C_LIGHT, GATE_MARGIN_OVER_B, Scenario, Target


def travel_time(scenario: Scenario, s: float, point) -> float:
    """Round-trip time from the platform at slow time s to a fixed point."""
    r = scenario.platform.position + scenario.platform.velocity * s
    return 2.0 * float(np.linalg.norm(r - np.asarray(point, dtype=float))) / C_LIGHT


def delta_tau(scenario: Scenario, target: Target, s) -> np.ndarray | float:
    """Differential delay of a target relative to the reference point.

    (2/c) * (|r(s) - rho(s)| - |r(s) - rho_o|), with the target advected to
    rho(s) = rho(0) + v_t s.
    """
    s = np.asarray(s, dtype=float)
    r = scenario.platform.position_at(s)
    rho = target.position_at(s)
    d_t = np.linalg.norm(r - rho, axis=-1)
    d_o = np.linalg.norm(r - scenario.reference_point, axis=-1)
    out = 2.0 * (d_t - d_o) / C_LIGHT
    return out if out.ndim else float(out)


def _all_delays(scenario: Scenario) -> np.ndarray:
    """dtau_i(s_j) for every target i (axis 0) and slow time s_j (axis 1)."""
    s = scenario.slow_times()
    return np.array([delta_tau(scenario, t, s) for t in scenario.targets])


def fast_time_gate(scenario: Scenario) -> tuple[float, float]:
    """Resolve the fast-time gate, auto-sizing it from the scene if not given."""
    grid = scenario.sampling
    if grid.gate_start is not None:
        return grid.gate_start, grid.gate_end
    B = scenario.pulse.bandwidth_parameter
    margin = GATE_MARGIN_OVER_B / B
    if scenario.targets:
        delays = _all_delays(scenario)
        return float(delays.min()) - margin, float(delays.max()) + margin
    return -margin, margin


def fast_times(scenario: Scenario) -> np.ndarray:
    t0, t1 = fast_time_gate(scenario)
    dt = scenario.sampling.delta_t
    m = int(math.floor((t1 - t0) / dt))
    return t0 + np.arange(m + 1) * dt


def _check_gate(scenario: Scenario, delays: np.ndarray, t: np.ndarray) -> None:
    support = 4.0 / scenario.pulse.bandwidth_parameter
    for i, row in enumerate(delays):
        if row.min() - support < t[0] or row.max() + support > t[-1]:
            raise GateTooNarrow(i)


def synthesize_downramped(scenario: Scenario) -> np.ndarray:
    """Real down-ramped data matrix, shape (n+1, m+1)."""
    t = fast_times(scenario)
    n1 = scenario.platform.pulse_count
    D = np.zeros((n1, t.size))
    if not scenario.targets:
        return D
    delays = _all_delays(scenario)
    _check_gate(scenario, delays, t)
    w0 = scenario.pulse.carrier_angular_frequency
    B = scenario.pulse.bandwidth_parameter
    for tgt, dtau in zip(scenario.targets, delays):
        arg = t[None, :] - dtau[:, None]
        D += tgt.reflectivity * (np.cos(w0 * arg) * np.exp(-B * B * arg * arg / 2.0))
    return D


def synthesize_baseband_direct(scenario: Scenario) -> np.ndarray:
    """Analytic complex-baseband matrix; oracle for the FFT filtering path."""
    t = fast_times(scenario)
    n1 = scenario.platform.pulse_count
    DB = np.zeros((n1, t.size), dtype=complex)
    if not scenario.targets:
        return DB
    delays = _all_delays(scenario)
    _check_gate(scenario, delays, t)
    w0 = scenario.pulse.carrier_angular_frequency
    B = scenario.pulse.bandwidth_parameter
    for tgt, dtau in zip(scenario.targets, delays):
        arg = t[None, :] - dtau[:, None]
        phase = np.exp(1j * w0 * dtau)[:, None]
        DB += tgt.reflectivity * (phase * np.exp(-B * B * arg * arg / 2.0))
    return DB


def column_support(scenario: Scenario, target: Target) -> int:
    """Number of fast-time columns a target's trace sweeps over the aperture."""
    dtau = delta_tau(scenario, target, scenario.slow_times())
    span = float(np.max(dtau) - np.min(dtau))
    return max(1, math.ceil(span / scenario.sampling.delta_t))
