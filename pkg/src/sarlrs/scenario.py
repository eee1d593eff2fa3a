"""Scene configuration: pulse, platform, targets, sampling grid.

All quantities are SI. Scenario JSON files carry plain frequencies in Hz
(field names say so); they are converted to angular frequencies on load.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError

C_LIGHT = 299_792_458.0

# Gate margin in units of 1/B.  exp(-8.5^2/2) ~ 2e-16, so truncated
# Gaussian tails are below 1e-14 of the peak.
GATE_MARGIN_OVER_B = 8.5


@dataclass(frozen=True)
class Pulse:
    carrier_angular_frequency: float  # omega_0 [rad/s]
    bandwidth_parameter: float        # B [rad/s], pulse envelope exp(-B^2 t^2 / 2)

    def __post_init__(self):
        if self.carrier_angular_frequency <= 0 or self.bandwidth_parameter <= 0:
            raise ConfigError("pulse frequencies must be positive")

    @property
    def narrowband(self) -> bool:
        return self.carrier_angular_frequency / self.bandwidth_parameter >= 10.0


@dataclass(frozen=True)
class Platform:
    position: np.ndarray   # r(0) [m]
    velocity: np.ndarray   # V_p [m/s]
    delta_s: float         # slow-time step [s]
    pulse_count: int       # n + 1, n even

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if self.delta_s <= 0:
            raise ConfigError("delta_s must be positive")
        if self.pulse_count < 2 or (self.pulse_count - 1) % 2 != 0:
            raise ConfigError("pulse_count must be n + 1 with n even")

    def position_at(self, s):
        s = np.asarray(s, dtype=float)
        return self.position + self.velocity * s[..., None]


@dataclass(frozen=True)
class Target:
    position: np.ndarray   # rho(0) [m]
    velocity: np.ndarray   # v_t [m/s]
    reflectivity: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))
        object.__setattr__(self, "velocity", np.asarray(self.velocity, dtype=float))
        if self.reflectivity < 0:
            raise ConfigError("reflectivity must be nonnegative")

    @property
    def stationary(self) -> bool:
        return float(np.linalg.norm(self.velocity)) == 0.0

    def position_at(self, s):
        s = np.asarray(s, dtype=float)
        return self.position + self.velocity * s[..., None]


@dataclass(frozen=True)
class SamplingGrid:
    delta_t: float                     # fast-time step [s]
    gate_start: float | None = None    # explicit gate; None = auto from targets
    gate_end: float | None = None

    def __post_init__(self):
        if self.delta_t <= 0:
            raise ConfigError("delta_t must be positive")
        if (self.gate_start is None) != (self.gate_end is None):
            raise ConfigError("gate_start and gate_end must be given together")
        if self.gate_start is not None and self.gate_end <= self.gate_start:
            raise ConfigError("gate_end must exceed gate_start")


@dataclass(frozen=True)
class Scenario:
    pulse: Pulse
    platform: Platform
    reference_point: np.ndarray        # rho_o [m], fixed in slow time
    targets: tuple = ()
    sampling: SamplingGrid = field(default_factory=lambda: SamplingGrid(1e-9))

    def __post_init__(self):
        object.__setattr__(self, "reference_point",
                           np.asarray(self.reference_point, dtype=float))
        object.__setattr__(self, "targets", tuple(self.targets))

    @property
    def n(self) -> int:
        return self.platform.pulse_count - 1

    def slow_times(self) -> np.ndarray:
        n = self.n
        return (np.arange(n + 1) - n // 2) * self.platform.delta_s

    def with_targets(self, targets) -> "Scenario":
        return replace(self, targets=tuple(targets))

    def moving_only(self) -> "Scenario":
        return self.with_targets(t for t in self.targets if not t.stationary)

    def stationary_only(self) -> "Scenario":
        return self.with_targets(t for t in self.targets if t.stationary)


def _require(doc: dict, key: str):
    if key not in doc:
        raise ConfigError(f"scenario JSON missing field '{key}'")
    return doc[key]


def scenario_from_dict(doc: dict) -> Scenario:
    try:
        p = _require(doc, "pulse")
        pulse = Pulse(
            carrier_angular_frequency=2 * np.pi * float(_require(p, "carrier_frequency_hz")),
            bandwidth_parameter=2 * np.pi * float(_require(p, "bandwidth_frequency_hz")),
        )
        pl = _require(doc, "platform")
        platform = Platform(
            position=_require(pl, "position_m"),
            velocity=_require(pl, "velocity_mps"),
            delta_s=float(_require(pl, "delta_s_seconds")),
            pulse_count=int(_require(pl, "pulse_count")),
        )
        sg = _require(doc, "sampling")
        sampling = SamplingGrid(
            delta_t=float(_require(sg, "delta_t_seconds")),
            gate_start=sg.get("gate_start_seconds"),
            gate_end=sg.get("gate_end_seconds"),
        )
        targets = tuple(
            Target(
                position=_require(t, "position_m"),
                velocity=_require(t, "velocity_mps"),
                reflectivity=float(t.get("reflectivity", 1.0)),
            )
            for t in doc.get("targets", [])
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"malformed scenario JSON: {exc}") from exc
    return Scenario(
        pulse=pulse,
        platform=platform,
        reference_point=_require(doc, "reference_point_m"),
        targets=targets,
        sampling=sampling,
    )


def scenario_to_dict(sc: Scenario) -> dict:
    doc = {
        "pulse": {
            "carrier_frequency_hz": sc.pulse.carrier_angular_frequency / (2 * np.pi),
            "bandwidth_frequency_hz": sc.pulse.bandwidth_parameter / (2 * np.pi),
        },
        "platform": {
            "position_m": list(sc.platform.position),
            "velocity_mps": list(sc.platform.velocity),
            "delta_s_seconds": sc.platform.delta_s,
            "pulse_count": sc.platform.pulse_count,
        },
        "reference_point_m": list(sc.reference_point),
        "targets": [
            {
                "position_m": list(t.position),
                "velocity_mps": list(t.velocity),
                "reflectivity": t.reflectivity,
            }
            for t in sc.targets
        ],
        "sampling": {
            "delta_t_seconds": sc.sampling.delta_t,
            "gate_start_seconds": sc.sampling.gate_start,
            "gate_end_seconds": sc.sampling.gate_end,
        },
    }
    return doc


def serialize_scenario(sc: Scenario) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(scenario_to_dict(sc), indent=2, sort_keys=True) + "\n"


def load_scenario(path) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: line {exc.lineno}: {exc.msg}") from exc
    return scenario_from_dict(doc)


def save_scenario(sc: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_scenario(sc))


def scenario_hash(sc: Scenario) -> str:
    return hashlib.sha256(serialize_scenario(sc).encode()).hexdigest()[:16]
