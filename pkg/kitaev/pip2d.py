# -*- coding: utf-8 -*-

"""
    kitaev.pip2d
    ~~~~~~~~~~~~

    Continuum p+ip superconductor: eps(k) = k^2/2m - mu, |Delta(k)| = |delta| |k|.
    Densities are per unit area and reduce to radial integrals on |k| <= cutoff.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .exc import GapClosed, InvalidParameter, InvalidSize
from .model import GAP_TOLERANCE, as_output, fold_angle
from .quadrature import DEFAULT_RTOL, composite_rule, integrate

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 64
CUTOFF_SCALE = 20.0


def default_cutoff(mu, delta, mass):
    return CUTOFF_SCALE * math.sqrt(2 * mass * max(abs(mu), delta * delta * mass, 1.0))


@dataclass(frozen=True)
class Pip2dParams:
    """mu = -inf stands for the empty vacuum, theta = 0 at every momentum."""

    mu: float
    delta: float
    mass: float = 0.5
    cutoff: Optional[float] = None
    resolution: int = 256

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidParameter("mass must be positive")
        if self.resolution < MIN_RESOLUTION:
            raise InvalidSize("resolution must be at least %d" % MIN_RESOLUTION)
        if self.cutoff is None:
            if math.isinf(self.mu):
                raise InvalidParameter("the vacuum needs an explicit cutoff")
            object.__setattr__(
                self, "cutoff", default_cutoff(self.mu, self.delta, self.mass)
            )
        if not self.cutoff > 0:
            raise InvalidParameter("cutoff must be positive")

    @property
    def vacuum(self):
        return self.mu == -math.inf

    @classmethod
    def vacuum_like(cls, other):
        return replace(other, mu=-math.inf)

    def replace(self, **changes):
        return replace(self, **changes)


def pairing2d(p, k):
    return abs(p.delta) * np.asarray(k)


def energy2d(p, k):
    k = np.asarray(k, dtype=float)
    return as_output(np.hypot(k * k / (2 * p.mass) - p.mu, pairing2d(p, k)))


def _radial_angle(p, k):
    k = np.asarray(k, dtype=float)
    if p.vacuum:
        return np.zeros_like(k)
    eps = k * k / (2 * p.mass) - p.mu
    gap = pairing2d(p, k)
    if np.any((np.abs(eps) < GAP_TOLERANCE) & (np.abs(gap) < GAP_TOLERANCE)):
        raise GapClosed("gap closes at k = 0 for mu=%g" % p.mu)
    return 0.5 * np.arctan2(gap, eps)


def angle2d(p, kx, ky):
    """theta = atan2(|Delta(k)|, eps(k))/2; depends on |k| only."""
    return as_output(_radial_angle(p, np.hypot(kx, ky)))


def _check_shared(reference, target):
    for name in ("mass", "cutoff", "resolution"):
        if getattr(reference, name) != getattr(target, name):
            raise InvalidParameter("reference and target differ in %s" % name)


def complexity2d(reference, target, rtol=DEFAULT_RTOL):
    """(1/2pi) * int_0^cutoff |dtheta(k)|^2 k dk."""
    _check_shared(reference, target)

    def integrand(k):
        dtheta = fold_angle(_radial_angle(reference, k) - _radial_angle(target, k))
        return np.square(dtheta) * k / (2 * np.pi)

    return integrate(integrand, 0.0, target.cutoff, rtol=rtol)


def complexity2d_grid(reference, target):
    """complexity2d on a Cartesian tensor Gauss-Legendre grid over the disk.

    kx = cutoff sin(u), ky = cutoff cos(u) v with u in [-pi/2, pi/2] and
    v in [-1, 1], so the chord ends carry no square-root singularity.
    """
    _check_shared(reference, target)
    panels = max(2, round(target.resolution / 32))
    u, wu = composite_rule(-np.pi / 2, np.pi / 2, panels)
    v, wv = composite_rule(-1.0, 1.0, panels)
    cutoff = target.cutoff
    kx = cutoff * np.sin(u)[:, None] * np.ones_like(v)
    ky = cutoff * np.cos(u)[:, None] * v
    weights = (cutoff * np.cos(u)) ** 2 * wu
    dtheta = fold_angle(
        np.asarray(angle2d(reference, kx, ky)) - np.asarray(angle2d(target, kx, ky))
    )
    return float(weights @ (np.square(dtheta) @ wv)) / (2 * np.pi) ** 2


def susceptibility2d(target, rtol=DEFAULT_RTOL):
    """d(C/L^2)/d(mu_T) against the vacuum reference.

    (1/2pi) * int_0^cutoff theta(k) |Delta(k)| k / E(k)^2 dk; finite as
    mu_T -> 0, with a logarithmically divergent slope there.
    """
    if target.mu == 0:
        raise GapClosed("susceptibility2d is evaluated off mu_T = 0")

    def integrand(k):
        eps = k * k / (2 * target.mass) - target.mu
        gap = pairing2d(target, k)
        return _radial_angle(target, k) * gap * k / (eps * eps + gap * gap) / (2 * np.pi)

    return integrate(integrand, 0.0, target.cutoff, rtol=rtol)


def curvature2d(target, rtol=DEFAULT_RTOL):
    """d(susceptibility2d)/d(mu_T) from the differentiated integrand,
    (1/2pi) * int k D (D + 4 theta eps) / (2 E^4) dk.
    """
    if target.mu == 0:
        raise GapClosed("curvature2d is evaluated off mu_T = 0")

    def integrand(k):
        eps = k * k / (2 * target.mass) - target.mu
        gap = pairing2d(target, k)
        energy2 = eps * eps + gap * gap
        theta = _radial_angle(target, k)
        return k * gap * (gap + 4 * theta * eps) / (4 * np.pi * energy2 * energy2)

    return integrate(integrand, 0.0, target.cutoff, rtol=rtol)
