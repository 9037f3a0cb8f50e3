# -*- coding: utf-8 -*-

"""
    kitaev.oracle
    ~~~~~~~~~~~~~

    Brute-force checks on single momentum pairs: 2x2 BdG blocks in the
    {vacuum, pair} basis, their ground states and exact evolution, and the
    discretized cost of unitary paths between two mode states.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .exc import BoundaryViolation, GapClosed, InvalidParameter, InvalidSize
from .model import GAP_TOLERANCE, pairing_function

logger = logging.getLogger(__name__)

BOUNDARY_TOLERANCE = 1e-12
PROBE_HARMONICS = 5
PROBE_AMPLITUDE = 0.5


def mode_hamiltonian(p, k):
    """[[-h, -i d], [i d, h]] with h = mu + cos k and d = delta g(k)."""
    h = p.mu + np.cos(k)
    d = p.delta * pairing_function(p, k)
    return np.array([[-h, -1j * d], [1j * d, h]])


def mode_energies(p, k):
    """Eigenvalues (-e, +e) of the mode block."""
    h = p.mu + np.cos(k)
    d = p.delta * pairing_function(p, k)
    energy = np.hypot(h, d)
    return -energy, energy


def mode_ground_state(p, k):
    """Lower eigenvector of the mode block, first amplitude real and >= 0.

    Matches (cos theta, -i sin theta) with the Bogoliubov angle theta.
    """
    h = p.mu + np.cos(k)
    d = p.delta * pairing_function(p, k)
    energy = np.hypot(h, d)
    if energy < GAP_TOLERANCE:
        raise GapClosed("mode at k=%g is gapless" % k)
    if h >= 0:
        state = np.array([energy + h, -1j * d])
    else:
        state = np.array([1j * d, energy - h])
    state = state / np.linalg.norm(state)
    if abs(state[0]) > 0:
        state = state * (abs(state[0]) / state[0])
    return state


def overlap_angle(a, b):
    """arccos|<a|b>| for unit vectors, from an arctangent that stays
    accurate near 0 and pi/2.
    """
    overlap = np.vdot(a, b)
    orthogonal = b - overlap * a
    return float(np.arctan2(np.linalg.norm(orthogonal), abs(overlap)))


def overlap_complexity_check(pair, k):
    reference = mode_ground_state(pair.reference, k)
    target = mode_ground_state(pair.target, k)
    return overlap_angle(reference, target) ** 2


def mode_evolution(q, k, t):
    """exp(-i H_f t) applied to the initial ground state; H_f^2 = e^2."""
    if t < 0:
        raise InvalidParameter("time must be non-negative")
    state = mode_ground_state(q.initial, k)
    hamiltonian = mode_hamiltonian(q.final, k)
    energy = np.sqrt(np.real(hamiltonian[0, 0]) ** 2 + np.abs(hamiltonian[0, 1]) ** 2)
    if energy < GAP_TOLERANCE:
        return state
    propagator = np.cos(energy * t) * np.eye(2) - 1j * np.sin(energy * t) * hamiltonian / energy
    return propagator @ state


@dataclass(frozen=True, eq=False)
class PathParams:
    """beta, phi1, phi2, omega sampled at s = j/M, j = 0..M."""

    beta: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    omega: np.ndarray
    delta_theta: float

    def __post_init__(self):
        sizes = {len(self.beta), len(self.phi1), len(self.phi2), len(self.omega)}
        if len(sizes) != 1 or sizes.pop() < 2:
            raise InvalidSize("path functions need a common length of at least 2")

    @property
    def M(self):
        return len(self.omega) - 1


def _boundary_errors(path):
    half_pi = np.pi / 2
    return {
        "beta(0)": path.beta[0],
        "phi1(0)": path.phi1[0],
        "phi2(0)": path.phi2[0] - half_pi,
        "omega(0)": path.omega[0],
        "beta(1)": path.beta[-1],
        "phi1(1)": path.phi1[-1],
        "phi2(1)": path.phi2[-1] - half_pi,
        "omega(1)": path.omega[-1] - path.delta_theta,
    }


def _costs(beta, phi1, phi2, omega):
    """Path costs along the last axis: segment slopes squared, metric
    coefficients averaged over the segment ends.
    """
    M = beta.shape[-1] - 1
    slope = [np.diff(f, axis=-1) * M for f in (beta, phi1, phi2, omega)]
    cos2 = np.cos(omega) ** 2
    sin2 = np.sin(omega) ** 2
    cos2 = 0.5 * (cos2[..., 1:] + cos2[..., :-1])
    sin2 = 0.5 * (sin2[..., 1:] + sin2[..., :-1])
    density = slope[0] ** 2 + slope[3] ** 2 + cos2 * slope[1] ** 2 + sin2 * slope[2] ** 2
    return np.sum(density, axis=-1) / M


def path_cost(path):
    """int_0^1 beta'^2 + omega'^2 + cos^2(omega) phi1'^2 + sin^2(omega) phi2'^2 ds."""
    for name, error in _boundary_errors(path).items():
        if abs(error) > BOUNDARY_TOLERANCE:
            raise BoundaryViolation("%s is off by %.3g" % (name, error))
    return float(_costs(path.beta, path.phi1, path.phi2, path.omega))


def linear_geodesic(delta_theta, M):
    s = np.linspace(0.0, 1.0, M + 1)
    zero = np.zeros_like(s)
    return PathParams(zero, zero, np.full_like(s, np.pi / 2), delta_theta * s, delta_theta)


def _perturbations(M, rng, count, harmonics, amplitude):
    """count x 4 x (M + 1) sums of sin(j pi s), j = 1..harmonics, with
    amplitudes uniform in [-amplitude, amplitude]; zero at both ends.
    """
    s = np.linspace(0.0, 1.0, M + 1)
    modes = np.sin(np.pi * np.arange(1, harmonics + 1)[:, None] * s)
    modes[:, [0, -1]] = 0.0
    return rng.uniform(-amplitude, amplitude, size=(count, 4, harmonics)) @ modes


def perturbed_path(delta_theta, M, rng, harmonics=PROBE_HARMONICS, amplitude=PROBE_AMPLITUDE):
    base = linear_geodesic(delta_theta, M)
    beta, phi1, phi2, omega = _perturbations(M, rng, 1, harmonics, amplitude)[0]
    return PathParams(
        base.beta + beta,
        base.phi1 + phi1,
        base.phi2 + phi2,
        base.omega + omega,
        delta_theta,
    )


def geodesic_minimality_probe(
    delta_theta,
    trials=1000,
    M=256,
    seed=0,
    harmonics=PROBE_HARMONICS,
    amplitude=PROBE_AMPLITUDE,
):
    """Smallest cost among random smooth perturbations of the linear path.

    All four functions are perturbed at once, with their ends held fixed.
    """
    if trials < 100 or M < 64:
        raise InvalidParameter("probe needs trials >= 100 and M >= 64")
    base = linear_geodesic(delta_theta, M)
    rng = np.random.default_rng(seed)
    paths = _perturbations(M, rng, trials, harmonics, amplitude)
    paths += np.stack([base.beta, base.phi1, base.phi2, base.omega])
    costs = _costs(paths[:, 0], paths[:, 1], paths[:, 2], paths[:, 3])
    logger.debug("probe over %d paths: min cost %.12g", trials, costs.min())
    return float(costs.min())
