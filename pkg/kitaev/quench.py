# -*- coding: utf-8 -*-

"""
    kitaev.quench
    ~~~~~~~~~~~~~

    Complexity growth after a sudden quench. A mode with angle difference
    dtheta and post-quench energy e sits at angle

        phi(t) = arccos sqrt(1 - sin^2(2 dtheta) sin^2(e t))

    from its initial state, and C(t) sums phi^2 over the grid.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .complexity import StatePair, delta_profile, signed_delta_theta
from .exc import InvalidParameter
from .model import as_output, dispersion, grid_dispersion
from .quadrature import composite_rule

logger = logging.getLogger(__name__)

TIME_POINTS = 2000
# slowest-mode periods covered by the default time grid
TIME_SPAN = 40.0
_BLOCK = 1 << 22

# 256-point rule on [0, pi/2]; averages over x = e t use the symmetry of sin^2
_AVERAGE_X, _AVERAGE_W = composite_rule(0.0, np.pi / 2, panels=8)


@dataclass(frozen=True)
class QuenchSetup:
    initial: object
    final: object

    def __post_init__(self):
        if not self.initial.same_family(self.final):
            raise InvalidParameter("initial and final chains must share L and kind")

    @property
    def pair(self):
        return StatePair(self.initial, self.final)


@dataclass(frozen=True, eq=False)
class QuenchProfile:
    grid: object
    delta_theta: np.ndarray
    energy: np.ndarray


@dataclass(frozen=True, eq=False)
class QuenchSeries:
    times: np.ndarray
    values: np.ndarray
    per_mode_avg: np.ndarray
    envelope: np.ndarray
    steady_state: float


def phi(delta_theta, energy, t):
    """Angle between the initial and evolved mode states, in [0, pi/2]."""
    s2 = np.sin(2 * np.asarray(delta_theta))
    x = np.asarray(energy) * np.asarray(t)
    rest = np.sqrt(np.cos(2 * np.asarray(delta_theta)) ** 2 + (s2 * np.cos(x)) ** 2)
    return np.arctan2(np.abs(s2 * np.sin(x)), rest)


def quench_profile(q):
    angles = delta_profile(q.pair)
    return QuenchProfile(angles.grid, angles.theta, grid_dispersion(q.final))


def phi_mode(q, k, t):
    if np.any(np.asarray(t) < 0):
        raise InvalidParameter("times must be non-negative")
    delta_theta = signed_delta_theta(q.pair, k)
    return as_output(phi(delta_theta, dispersion(q.final, k), t))


def max_envelope(q, k):
    """Largest phi reached by the mode at k, arccos|cos 2 dtheta|."""
    two = 2 * np.asarray(signed_delta_theta(q.pair, k))
    return as_output(np.arctan2(np.abs(np.sin(two)), np.abs(np.cos(two))))


def _mode_average(delta_theta, power):
    s = np.abs(np.sin(2 * np.asarray(delta_theta, dtype=float)))
    inner = np.clip(s[..., None] * np.sin(_AVERAGE_X), 0.0, 1.0)
    return as_output((2 / np.pi) * (np.arcsin(inner) ** power @ _AVERAGE_W))


def mode_time_average(delta_theta):
    """Time average of phi^2: (1/pi) * int_0^pi arcsin^2(|sin 2 dtheta| sin x) dx."""
    return _mode_average(delta_theta, 2)


def mode_phi_average(delta_theta):
    """Time average of phi itself; pi/4 when sin^2(2 dtheta) = 1."""
    return _mode_average(delta_theta, 1)


def default_times(q, points=TIME_POINTS):
    gap = float(np.min(grid_dispersion(q.final)))
    return np.linspace(0.0, TIME_SPAN / gap, points)


def complexity_timeseries(q, times=None):
    profile = quench_profile(q)
    times = default_times(q) if times is None else np.asarray(times, dtype=float)
    if times.ndim != 1 or np.any(times < 0) or np.any(np.diff(times) <= 0):
        raise InvalidParameter("times must be non-negative and increasing")
    values = np.empty(len(times))
    rows = max(1, _BLOCK // len(profile.delta_theta))
    for start in range(0, len(times), rows):
        t = times[start:start + rows, None]
        values[start:start + rows] = np.sum(
            phi(profile.delta_theta, profile.energy, t) ** 2, axis=1
        )
    per_mode_avg = mode_time_average(profile.delta_theta)
    envelope = np.arctan2(
        np.abs(np.sin(2 * profile.delta_theta)), np.abs(np.cos(2 * profile.delta_theta))
    )
    logger.debug("quench series over %d times and %d modes", len(times), len(envelope))
    return QuenchSeries(
        times, values, per_mode_avg, envelope, float(np.sum(per_mode_avg))
    )


def steady_state(q):
    return float(np.sum(mode_time_average(quench_profile(q).delta_theta)))


def steady_state_scan(initial, values, field="mu", final=None):
    """Steady-state complexity for each value of one final-chain field.

    `final` is the template for the post-quench chain and defaults to the
    initial chain.
    """
    template = initial if final is None else final
    return [
        (value, steady_state(QuenchSetup(initial, template.replace(**{field: value}))))
        for value in values
    ]
