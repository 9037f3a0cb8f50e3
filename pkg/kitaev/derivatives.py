# -*- coding: utf-8 -*-

"""
    kitaev.derivatives
    ~~~~~~~~~~~~~~~~~~

    Susceptibilities of the complexity density, branch points of the
    contour representation, phase classification and the leading
    divergences near the critical lines.
"""

import cmath
import enum
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .complexity import StatePair, density_limit, signed_delta_theta, total_complexity
from .exc import BoundaryAmbiguous, DomainError, InvalidParameter
from .model import Kind, build_grid, grid_pairing, pairing_function
from .quadrature import DEFAULT_RTOL, integrate

logger = logging.getLogger(__name__)

FD_STEP = 1e-4
# quadrature tolerance behind a thermodynamic finite difference
FD_RTOL = 1e-13
WINDING_OVERSAMPLE = 10
WINDING_MARGIN = 0.1
DEGENERATE_TOLERANCE = 1e-12


class Which(enum.Enum):
    MU = "mu"
    DELTA = "delta"


def _target_terms(target, k):
    g = np.asarray(pairing_function(target, k))
    h = target.mu + np.cos(k)
    return g, h, h * h + (target.delta * g) ** 2


def susceptibility_mu(pair, rtol=DEFAULT_RTOL):
    """d(C/L)/d(mu_T) = (delta_T/2pi) * int_0^pi dtheta g / E^2 dk."""
    target = pair.target

    def integrand(k):
        g, _, energy2 = _target_terms(target, k)
        return target.delta * signed_delta_theta(pair, k) * g / energy2 / (2 * np.pi)

    return integrate(integrand, 0.0, np.pi, rtol=rtol)


def susceptibility_delta(pair, rtol=DEFAULT_RTOL):
    """d(C/L)/d(delta_T) = -(1/2pi) * int_0^pi dtheta g h / E^2 dk."""
    target = pair.target

    def integrand(k):
        g, h, energy2 = _target_terms(target, k)
        return -signed_delta_theta(pair, k) * g * h / energy2 / (2 * np.pi)

    return integrate(integrand, 0.0, np.pi, rtol=rtol)


def susceptibility_fd(pair, which=Which.MU, step=FD_STEP, thermodynamic=False):
    """Centered difference of C/L in mu_T or delta_T.

    Finite chains difference total_complexity/L; thermodynamic=True
    differences density_limit instead.
    """
    if not step > 0:
        raise InvalidParameter("finite-difference step must be positive")
    field = Which(which).value
    value = getattr(pair.target, field)
    up = StatePair(pair.reference, pair.target.replace(**{field: value + step}))
    down = StatePair(pair.reference, pair.target.replace(**{field: value - step}))
    if thermodynamic:
        return (density_limit(up, FD_RTOL) - density_limit(down, FD_RTOL)) / (2 * step)
    return (total_complexity(up).density - total_complexity(down).density) / (2 * step)


@dataclass(frozen=True)
class BranchPoints:
    mu: float
    delta: float
    z1: Optional[complex]
    z2: Optional[complex]
    z3: Optional[complex]
    z4: Optional[complex]

    @property
    def degenerate(self):
        return None in (self.z1, self.z2, self.z3, self.z4)

    def items(self):
        return (("z1", self.z1), ("z2", self.z2), ("z3", self.z3), ("z4", self.z4))

    def inside(self):
        return tuple(name for name, z in self.items() if z is not None and abs(z) < 1)


def _root_pair(a, b, c, root):
    """Roots (plus, minus) of a z^2 + 2b z + c = 0, i.e. (-b +- root)/a.

    The small root comes from c/q so it stays accurate as a -> 0, where
    the large one is dropped.
    """
    sign = 1.0 if (b * root.conjugate()).real >= 0 else -1.0
    q = -(b + sign * root)
    if q == 0:
        return (0j, 0j) if abs(a) >= DEGENERATE_TOLERANCE else (None, None)
    large = q / a if abs(a) >= DEGENERATE_TOLERANCE else None
    small = c / q
    # q = -b - root pairs the large root with the minus sign
    return (small, large) if sign > 0 else (large, small)


def branch_points(mu, delta):
    root = cmath.sqrt(complex(mu * mu + delta * delta - 1.0))
    z1, z2 = _root_pair(1.0 + delta, mu, 1.0 - delta, root)
    z3, z4 = _root_pair(1.0 - delta, mu, 1.0 + delta, root)
    return BranchPoints(mu, delta, z1, z2, z3, z4)


_INSIDE_TO_WINDING = {
    frozenset(("z1", "z2")): 1,
    frozenset(("z3", "z4")): -1,
    frozenset(("z1", "z3")): 0,
    frozenset(("z2", "z4")): 0,
}


def winding_from_branch_points(points):
    """Winding number read off which branch points lie in the unit disk."""
    inside = frozenset(points.inside())
    try:
        return _INSIDE_TO_WINDING[inside]
    except KeyError:
        raise BoundaryAmbiguous(
            "branch points %s inside the unit circle at mu=%g delta=%g"
            % (sorted(inside), points.mu, points.delta)
        )


@dataclass(frozen=True)
class PhaseLabel:
    winding: float
    inside_points: Tuple[str, ...]


def _accumulated_angle(p, size):
    """Twice the unwrapped angle swept by (mu + cos k, delta g(k)) over (0, pi).

    Long-range pairing is taken from a chain of `size` sites on its own
    grid, where the finite sum is smooth.
    """
    dense = p.replace(L=size)
    k = build_grid(size).points
    angles = np.arctan2(p.delta * grid_pairing(dense), p.mu + np.cos(k))
    unwrapped = np.unwrap(angles)
    if np.max(np.abs(np.diff(unwrapped))) > np.pi / 2:
        raise BoundaryAmbiguous(
            "angle jumps by more than pi/2 between momenta at mu=%g delta=%g"
            % (p.mu, p.delta)
        )
    return 2.0 * (unwrapped[-1] - unwrapped[0])


def _half_integer(swept, p):
    ratio = swept / np.pi
    nearest = np.floor(ratio) + 0.5
    if abs(swept - nearest * np.pi) < WINDING_MARGIN:
        raise BoundaryAmbiguous(
            "swept angle %.6g is within %g of a rounding midpoint at mu=%g delta=%g"
            % (swept, WINDING_MARGIN, p.mu, p.delta)
        )
    return float(round(ratio)) / 2.0


def winding_number(p, oversample=WINDING_OVERSAMPLE):
    size = oversample * p.L
    winding = _half_integer(_accumulated_angle(p, size), p)
    check = _half_integer(_accumulated_angle(p, 2 * size), p)
    if winding != check:
        raise BoundaryAmbiguous(
            "winding %g changes to %g when the grid doubles" % (winding, check)
        )
    if p.kind is Kind.SHORT_RANGE and winding != int(winding):
        raise BoundaryAmbiguous("half-integer winding for a short-range chain")
    logger.debug("winding %g for %r", winding, p)
    return winding + 0.0


def classify_phase(p, oversample=WINDING_OVERSAMPLE):
    winding = winding_number(p, oversample)
    if p.kind is Kind.SHORT_RANGE:
        inside = branch_points(p.mu, p.delta).inside()
    else:
        inside = ()
    return PhaseLabel(winding, inside)


def asymptotic_mu_divergence(mu_t, delta_t):
    """sign(mu)/(8 sqrt(mu^2 + delta^2 - 1)) * log|(mu^2 - 1)/(mu^2 + delta^2 - 1)|."""
    radicand = mu_t * mu_t + delta_t * delta_t - 1.0
    if radicand <= 0 or abs(mu_t) == 1:
        raise DomainError(
            "mu divergence needs mu^2 + delta^2 > 1 and |mu| != 1, got mu=%g delta=%g"
            % (mu_t, delta_t)
        )
    ratio = (mu_t * mu_t - 1.0) / radicand
    return math.copysign(1.0, mu_t) * math.log(abs(ratio)) / (8.0 * math.sqrt(radicand))


def asymptotic_delta_divergence(mu_t, delta_t):
    """(1/4)(1 + |mu delta|/sqrt|mu^2 + delta^2 - 1|) * log|delta|, for |mu| <= 1."""
    if abs(mu_t) > 1:
        raise DomainError("delta divergence only exists for |mu| <= 1, got mu=%g" % mu_t)
    if delta_t == 0:
        raise DomainError("delta divergence is evaluated at delta != 0")
    if abs(delta_t) == 1:
        return 0.0
    radicand = abs(mu_t * mu_t + delta_t * delta_t - 1.0)
    if radicand == 0:
        raise DomainError("coefficient diverges on mu^2 + delta^2 = 1")
    coefficient = 0.25 * (1.0 + abs(mu_t * delta_t) / math.sqrt(radicand))
    return coefficient * math.log(abs(delta_t))
