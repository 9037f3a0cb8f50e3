# -*- coding: utf-8 -*-

"""
    kitaev.optimal_circuit
    ~~~~~~~~~~~~~~~~~~~~~~

    Real-space range of the optimal circuit. The signed angle difference is
    expanded as dtheta(k) = 2 * sum_n omega_n sin(nk); omega_n is the
    amplitude of the n-th neighbour pairing term of the generator.
"""

import enum
import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import Callable, List, Optional, Tuple

import numpy as np

from .complexity import signed_delta_theta
from .exc import InvalidParameter
from .quadrature import composite_rule

logger = logging.getLogger(__name__)

N_MAX = 4096
CHECK_POINTS = 4096
PLATEAU_IMPROVEMENT = 0.01
# below this order a flat stretch is usually a run of vanishing coefficients
PLATEAU_START = 16
COEFFICIENT_FLOOR = 1e-12
EDGE_FLOOR = 1e-9
# slope of log|omega_n| separating the two tail laws
TAIL_SLOPE = -2.0
_BLOCK = 1 << 21


class TailLaw(enum.Enum):
    FAST_DECAY = "fast-decay"
    INVERSE_N = "inverse-n"


@dataclass(frozen=True, eq=False)
class SineSpectrum:
    coefficients: np.ndarray
    profile: Callable
    source: Optional[object] = None

    @property
    def n_max(self):
        return len(self.coefficients)


@dataclass(frozen=True)
class LocalityReport:
    truncation_order: Optional[int]
    sup_error_curve: List[Tuple[int, float]]
    tail_law: TailLaw
    tail_constant: float

    @property
    def achievable(self):
        return self.truncation_order is not None


def sine_coefficients_of(profile, n_max=N_MAX, source=None):
    """omega_n = (1/pi) int_0^pi profile(k) sin(nk) dk for n = 1..n_max.

    Panels span one period of the fastest sine, each with a 32-point rule.
    """
    if n_max < 1:
        raise InvalidParameter("n_max must be positive")
    x, w = composite_rule(0.0, np.pi, max(64, math.ceil(n_max / 2)))
    weighted = w * np.asarray(profile(x)) / np.pi
    n = np.arange(1, n_max + 1, dtype=float)
    coefficients = np.empty(n_max)
    rows = max(1, _BLOCK // len(x))
    for start in range(0, n_max, rows):
        block = n[start:start + rows]
        coefficients[start:start + rows] = np.sin(np.outer(block, x)) @ weighted
    logger.debug("%d sine coefficients from %d nodes", n_max, len(x))
    return SineSpectrum(coefficients, profile, source)


def sine_coefficients(pair, n_max=N_MAX):
    return sine_coefficients_of(partial(signed_delta_theta, pair), n_max, source=pair)


def partial_sum(spectrum, order, k):
    k = np.asarray(k, dtype=float)
    n = np.arange(1, order + 1, dtype=float)
    return 2.0 * np.sin(np.multiply.outer(k, n)) @ spectrum.coefficients[:order]


def check_grid(points=CHECK_POINTS):
    return np.pi * (np.arange(points) + 0.5) / points


def sup_errors(spectrum, points=CHECK_POINTS):
    """Sup-norm error of every partial sum, index 0..n_max, on the check grid."""
    k = check_grid(points)
    residual = np.array(spectrum.profile(k), dtype=float)
    errors = np.empty(spectrum.n_max + 1)
    errors[0] = np.max(np.abs(residual))
    for n, omega in enumerate(spectrum.coefficients, start=1):
        residual -= 2.0 * omega * np.sin(n * k)
        errors[n] = np.max(np.abs(residual))
    return errors


def _is_power_of_two(n):
    return n >= 2 and not n & (n - 1)


def truncation_order(spectrum, epsilon, errors=None):
    """Smallest N whose partial sum is within epsilon everywhere, or None.

    None means the error stalled: from N = PLATEAU_START on, the best error
    in (N/2, N] improved on the best error in (N/4, N/2] by less than 1%
    while still above epsilon.
    """
    if not epsilon > 0:
        raise InvalidParameter("epsilon must be positive")
    errors = sup_errors(spectrum) if errors is None else errors
    for n, error in enumerate(errors):
        if error <= epsilon:
            return n
        if n >= PLATEAU_START and _is_power_of_two(n):
            previous = np.min(errors[n // 4 + 1:n // 2 + 1])
            current = np.min(errors[n // 2 + 1:n + 1])
            if previous - current < PLATEAU_IMPROVEMENT * previous:
                logger.debug("sup error plateaus at %.3g from N=%d", current, n)
                return None
    return None


def tail_law(spectrum):
    """Classify the decay of |omega_n| over the last decade of n."""
    n_max = spectrum.n_max
    n = np.arange(max(1, n_max // 10), n_max + 1)
    magnitude = np.abs(spectrum.coefficients[n - 1])
    significant = magnitude > COEFFICIENT_FLOOR
    if np.count_nonzero(significant) < 2:
        return TailLaw.FAST_DECAY
    slope = np.polyfit(np.log(n[significant]), np.log(magnitude[significant]), 1)[0]
    return TailLaw.INVERSE_N if slope > TAIL_SLOPE else TailLaw.FAST_DECAY


def tail_constant(spectrum):
    n_max = spectrum.n_max
    n = np.arange(max(1, n_max - n_max // 8), n_max + 1)
    return float(np.median(n * np.abs(spectrum.coefficients[n - 1])))


def locality_report(pair, n_max=N_MAX, epsilon=1e-3, spectrum=None):
    spectrum = sine_coefficients(pair, n_max) if spectrum is None else spectrum
    errors = sup_errors(spectrum)
    curve = [(0, float(errors[0]))]
    order = 1
    while order <= spectrum.n_max:
        curve.append((order, float(errors[order])))
        order *= 2
    return LocalityReport(
        truncation_order(spectrum, epsilon, errors),
        curve,
        tail_law(spectrum),
        tail_constant(spectrum),
    )


def gibbs_overshoot(spectrum, order, samples=4001):
    """Overshoot of the order-N partial sum next to k = pi, as a fraction of
    the jump 2|dtheta(pi-)| of the odd periodic extension.
    """
    edge = float(np.asarray(spectrum.profile(np.array([np.pi * (1 - 1e-12)])))[0])
    if abs(edge) < EDGE_FLOOR:
        return 0.0
    k = np.pi - np.linspace(8 * np.pi / order, np.pi / (400 * order), samples)
    excess = (partial_sum(spectrum, order, k) - spectrum.profile(k)) * np.sign(edge)
    return float(np.max(excess) / (2 * abs(edge)))
