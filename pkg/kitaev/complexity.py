# -*- coding: utf-8 -*-

"""
    kitaev.complexity
    ~~~~~~~~~~~~~~~~~

    Ground-state circuit complexity between a reference and a target chain.
    Each momentum pair contributes the squared Bogoliubov angle difference.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .exc import InvalidParameter
from .model import (
    AngleProfile,
    angle_profile,
    as_output,
    bogoliubov_angle,
    fold_angle,
    pairing_function,
)
from .quadrature import DEFAULT_RTOL, integrate

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StatePair:
    reference: object
    target: object

    def __post_init__(self):
        if not self.reference.same_family(self.target):
            raise InvalidParameter(
                "reference and target must share L and chain kind: %r vs %r"
                % (self.reference, self.target)
            )

    @property
    def L(self):
        return self.reference.L

    def swapped(self):
        return StatePair(self.target, self.reference)


@dataclass(frozen=True, eq=False)
class ComplexityReport:
    total: float
    per_mode: np.ndarray
    density: float


def signed_delta_theta(pair, k):
    """theta_R - theta_T folded into (-pi/2, pi/2]."""
    theta_r = np.asarray(bogoliubov_angle(pair.reference, k))
    theta_t = np.asarray(bogoliubov_angle(pair.target, k))
    return fold_angle(theta_r - theta_t)


def delta_theta(pair, k):
    return as_output(np.abs(signed_delta_theta(pair, k)))


def delta_theta_closed_form(pair, k):
    """Signed angle difference from a single two-argument arctangent.

    Only used to cross-check signed_delta_theta.
    """
    ref, tgt = pair.reference, pair.target
    cos_k = np.cos(k)
    h_r, h_t = ref.mu + cos_k, tgt.mu + cos_k
    d_r = ref.delta * np.asarray(pairing_function(ref, k))
    d_t = tgt.delta * np.asarray(pairing_function(tgt, k))
    return as_output(0.5 * np.arctan2(d_r * h_t - d_t * h_r, h_r * h_t + d_r * d_t))


def pair_complexity(pair, k):
    return as_output(np.square(delta_theta(pair, k)))


def delta_profile(pair):
    """Signed folded angle differences on the grid."""
    reference = angle_profile(pair.reference)
    target = angle_profile(pair.target)
    return AngleProfile(reference.grid, fold_angle(reference.theta - target.theta))


def total_complexity(pair):
    per_mode = np.square(delta_profile(pair).theta)
    total = float(np.sum(per_mode))
    return ComplexityReport(total, per_mode, total / pair.L)


def density_limit(pair, rtol=DEFAULT_RTOL):
    """(1/2pi) * integral over (0, pi) of |delta theta(k)|^2.

    For long-range chains the finite-L pairing sum of the pair is used at
    every quadrature node.
    """

    def integrand(k):
        return np.square(signed_delta_theta(pair, k)) / (2 * np.pi)

    return integrate(integrand, 0.0, np.pi, rtol=rtol)
