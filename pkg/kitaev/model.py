# -*- coding: utf-8 -*-

"""
    kitaev.model
    ~~~~~~~~~~~~

    Chain parameters, the antiperiodic momentum grid, pairing functions,
    dispersion and Bogoliubov angles. Hopping is the unit of energy.
"""

import enum
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from .exc import GapClosed, InvalidParameter, InvalidSize

logger = logging.getLogger(__name__)

GAP_TOLERANCE = 1e-14

# entries of the (momenta x bonds) sine matrix built per block
_PAIRING_BLOCK = 1 << 20


class Kind(enum.Enum):
    SHORT_RANGE = "short"
    LONG_RANGE = "long"


def check_size(L):
    if isinstance(L, bool) or int(L) != L or L < 4 or L % 2:
        raise InvalidSize("L must be an even integer >= 4, got %r" % (L,))
    return int(L)


def as_output(values):
    """Return a float for 0-d results, the array otherwise."""
    if np.ndim(values) == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class ModelParams:
    kind: Kind
    mu: float
    delta: float
    L: int
    alpha: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "L", check_size(self.L))
        try:
            kind = Kind(self.kind)
        except ValueError:
            raise InvalidParameter("unknown chain kind %r" % (self.kind,))
        object.__setattr__(self, "kind", kind)
        for name in ("mu", "delta"):
            value = float(getattr(self, name))
            if np.isnan(value):
                raise InvalidParameter("%s must be a number" % name)
            object.__setattr__(self, name, value)
        if kind is Kind.LONG_RANGE:
            if self.alpha is None or not float(self.alpha) >= 0:
                raise InvalidParameter(
                    "long-range chains need alpha >= 0, got %r" % (self.alpha,)
                )
            object.__setattr__(self, "alpha", float(self.alpha))
        elif self.alpha is not None:
            raise InvalidParameter("alpha only applies to long-range chains")

    @classmethod
    def short_range(cls, mu, delta, L):
        return cls(Kind.SHORT_RANGE, mu, delta, L)

    @classmethod
    def long_range(cls, mu, delta, L, alpha):
        return cls(Kind.LONG_RANGE, mu, delta, L, alpha)

    def replace(self, **changes):
        return replace(self, **changes)

    def same_family(self, other):
        return self.L == other.L and self.kind is other.kind


@dataclass(frozen=True, eq=False)
class MomentumGrid:
    points: np.ndarray

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True, eq=False)
class AngleProfile:
    grid: MomentumGrid
    theta: np.ndarray

    def __post_init__(self):
        if len(self.theta) != len(self.grid):
            raise InvalidSize(
                "profile has %d angles for %d momenta"
                % (len(self.theta), len(self.grid))
            )


def build_grid(L):
    """Antiperiodic momenta k_n = 2pi(n + 1/2)/L, n = 0..L/2-1."""
    L = check_size(L)
    points = 2.0 * np.pi * (np.arange(L // 2) + 0.5) / L
    points.setflags(write=False)
    return MomentumGrid(points)


@lru_cache(maxsize=64)
def bond_weights(L, alpha):
    """1/d_l^alpha for l = 1..L-1 with d_l = min(l, L - l)."""
    ell = np.arange(1, L)
    d = np.minimum(ell, L - ell).astype(float)
    weights = d ** -alpha
    weights.setflags(write=False)
    return weights


def long_range_pairing(k, L, alpha):
    k = np.asarray(k, dtype=float)
    flat = k.ravel()
    ell = np.arange(1, L, dtype=float)
    weights = bond_weights(L, alpha)
    out = np.empty_like(flat)
    rows = max(1, _PAIRING_BLOCK // (L - 1))
    for start in range(0, flat.size, rows):
        block = flat[start:start + rows]
        out[start:start + rows] = np.sin(np.outer(block, ell)) @ weights
    return as_output(out.reshape(k.shape))


@lru_cache(maxsize=32)
def _grid_long_range_pairing(L, alpha):
    values = np.asarray(long_range_pairing(build_grid(L).points, L, alpha))
    values.setflags(write=False)
    logger.debug("cached long-range pairing for L=%d alpha=%g", L, alpha)
    return values


def pairing_function(p, k):
    if p.kind is Kind.SHORT_RANGE:
        return as_output(np.sin(k))
    return long_range_pairing(k, p.L, p.alpha)


def grid_pairing(p):
    """Pairing function on the antiperiodic grid of p."""
    if p.kind is Kind.SHORT_RANGE:
        return np.sin(build_grid(p.L).points)
    return _grid_long_range_pairing(p.L, p.alpha)


def _angle(h, d, p):
    closed = (np.abs(h) < GAP_TOLERANCE) & (np.abs(d) < GAP_TOLERANCE)
    if np.any(closed):
        raise GapClosed(
            "gap closes for mu=%g delta=%g (%s chain)" % (p.mu, p.delta, p.kind.value)
        )
    return 0.5 * np.arctan2(d, h)


def dispersion(p, k):
    h = p.mu + np.cos(k)
    d = p.delta * pairing_function(p, k)
    return as_output(np.hypot(h, d))


def bogoliubov_angle(p, k):
    """theta = atan2(delta * g(k), mu + cos k) / 2, in (-pi/2, pi/2]."""
    h = p.mu + np.cos(k)
    d = p.delta * np.asarray(pairing_function(p, k))
    return as_output(_angle(h, d, p))


def angle_profile(p):
    grid = build_grid(p.L)
    h = p.mu + np.cos(grid.points)
    d = p.delta * grid_pairing(p)
    return AngleProfile(grid, _angle(h, d, p))


def grid_dispersion(p):
    grid = build_grid(p.L)
    return np.hypot(p.mu + np.cos(grid.points), p.delta * grid_pairing(p))


def fold_angle(x):
    """Fold an angle difference from (-pi, pi) into (-pi/2, pi/2]."""
    x = np.asarray(x, dtype=float)
    folded = np.where(x > np.pi / 2, x - np.pi, np.where(x <= -np.pi / 2, x + np.pi, x))
    return as_output(folded)
