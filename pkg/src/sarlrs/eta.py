"""Closed-form bounds and optimum for the sparse-term weight eta.

The admissible band (eta_min, eta_max) comes from nuclear-to-l1 norm ratios
of single-target data matrices: the stationary representative caps eta from
below, a minimally-resolved moving target from above.  The optimum is the
geometric mean, which minimizes F(eta) = eta_min/eta + eta/eta_max.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateGeometry
from .scenario import C_LIGHT, Scenario


@dataclass(frozen=True)
class ApertureParams:
    aperture_time: float       # S(a) [s]; the full aperture is 2 S(a) = n * ds
    delta_s: float             # [s]
    delta_t: float             # [s]
    bandwidth_parameter: float # B [rad/s]
    velocity: np.ndarray       # minimal target velocity to resolve [m/s]
    platform_position: np.ndarray   # r(0) [m]
    reference_point: np.ndarray     # rho_o [m]

    def __post_init__(self):
        for name in ("velocity", "platform_position", "reference_point"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if min(self.aperture_time, self.delta_s, self.delta_t,
               self.bandwidth_parameter) <= 0:
            raise ConfigError("aperture parameters must be positive")

    @classmethod
    def from_scenario(cls, sc: Scenario, velocity) -> "ApertureParams":
        return cls(
            aperture_time=sc.n * sc.platform.delta_s / 2.0,
            delta_s=sc.platform.delta_s,
            delta_t=sc.sampling.delta_t,
            bandwidth_parameter=sc.pulse.bandwidth_parameter,
            velocity=velocity,
            platform_position=sc.platform.position,
            reference_point=sc.reference_point,
        )


@dataclass(frozen=True)
class EtaBounds:
    eta_min: float
    eta_max: float
    regime: str                # "baseband" | "original"
    column_support: float

    @property
    def eta_star(self) -> float:
        return math.sqrt(self.eta_min * self.eta_max)

    @property
    def dynamic_range(self) -> float:
        return math.sqrt(self.eta_max / self.eta_min)

    @property
    def admissible(self) -> bool:
        return self.eta_max >= self.eta_min

    def as_dict(self) -> dict:
        return {
            "eta_min": float(self.eta_min),
            "eta_max": float(self.eta_max),
            "eta_star": float(self.eta_star),
            "dynamic_range": float(self.dynamic_range),
            "N": float(self.column_support),
            "regime": self.regime,
            "admissible": bool(self.admissible),
        }


def analytic_column_support(params: ApertureParams) -> float:
    """Linearized column support N of a moving target's trace, floored at 1."""
    look = params.platform_position - params.reference_point
    dist = np.linalg.norm(look)
    if dist == 0:
        raise DegenerateGeometry("platform coincides with the reference point")
    radial = abs(float(np.dot(look, params.velocity))) / dist
    N = (4.0 * params.aperture_time / (C_LIGHT * params.delta_t)) * radial
    return max(1.0, float(N))


def _spectrum_normalization(N: float, b_dt: float) -> float:
    """Sum over the model spectrum exp(-pi^2 k^2 / (N B dt)^2).

    Large N*B*dt: Gaussian-sum closed form N*B*dt/(2 sqrt(pi)) + 1/2;
    otherwise the explicit finite sum (the closed form degrades).
    """
    if N * b_dt >= math.sqrt(math.pi):
        return N * b_dt / (2.0 * math.sqrt(math.pi)) + 0.5
    k = np.arange(int(max(N, 1.0)))
    return float(np.sum(np.exp(-np.pi**2 * k**2 / (N * b_dt) ** 2)))


def eta_bounds_baseband(params: ApertureParams) -> EtaBounds:
    b_dt = params.bandwidth_parameter * params.delta_t
    N = analytic_column_support(params)
    eta_min = math.sqrt(params.delta_s * b_dt /
                        (4.0 * params.aperture_time * math.sqrt(math.pi)))
    norm = _spectrum_normalization(N, b_dt)
    eta_max = eta_min * (1.0 / math.sqrt(norm)) * ((math.sqrt(2.0) * N * b_dt / math.pi + 1.0) / 2.0)
    return EtaBounds(eta_min=eta_min, eta_max=eta_max, regime="baseband",
                     column_support=N)


def eta_bounds_original(params: ApertureParams) -> EtaBounds:
    """Same nuclear norms, l1 smaller by 2/pi, so both bounds scale by pi/2."""
    bb = eta_bounds_baseband(params)
    return EtaBounds(eta_min=bb.eta_min * math.pi / 2.0,
                     eta_max=bb.eta_max * math.pi / 2.0,
                     regime="original", column_support=bb.column_support)


def conventional_eta(rows: int, cols: int) -> float:
    if rows < 1 or cols < 1:
        raise ConfigError("matrix dimensions must be positive")
    return 1.0 / math.sqrt(max(rows, cols))
