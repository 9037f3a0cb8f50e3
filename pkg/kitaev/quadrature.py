# -*- coding: utf-8 -*-

"""
    kitaev.quadrature
    ~~~~~~~~~~~~~~~~~

    Composite Gauss-Legendre rules, fixed and adaptive.
"""

import logging

import numpy as np
from scipy.special import roots_legendre

from .exc import NoConvergence

logger = logging.getLogger(__name__)

ORDER = 32
PANEL_BUDGET = 4000
MIN_WIDTH = 1e-8
ABS_FLOOR = 1e-15
DEFAULT_RTOL = 1e-10

_NODES, _WEIGHTS = roots_legendre(ORDER)


def composite_rule(a, b, panels, order=ORDER):
    """Nodes and weights of `panels` equal Gauss-Legendre panels on [a, b]."""
    if order == ORDER:
        nodes, weights = _NODES, _WEIGHTS
    else:
        nodes, weights = roots_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * nodes).ravel()
    w = (half[:, None] * weights).ravel()
    return x, w


def _panel_estimates(f, lo, hi):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    quarter = 0.5 * half
    x = np.concatenate(
        [
            mid[:, None] + half[:, None] * _NODES,
            0.5 * (lo + mid)[:, None] + quarter[:, None] * _NODES,
            0.5 * (mid + hi)[:, None] + quarter[:, None] * _NODES,
        ]
    )
    fx = np.asarray(f(x), dtype=float).reshape(x.shape) @ _WEIGHTS
    n = len(lo)
    coarse = half * fx[:n]
    fine = quarter * (fx[n:2 * n] + fx[2 * n:])
    return fine, np.abs(fine - coarse)


def integrate(
    f,
    a,
    b,
    rtol=DEFAULT_RTOL,
    atol=ABS_FLOOR,
    panels=8,
    budget=PANEL_BUDGET,
    min_width=MIN_WIDTH,
):
    """Integrate a vectorized f over [a, b] by adaptive bisection.

    Each panel is estimated with a 32-point rule on the panel and on its two
    halves; the halves give the value, their difference the error. Panels
    are split until the summed error is below max(rtol*|value|, atol), with
    every accepted panel holding its share of the tolerance by width.

    :param f: callable taking an ndarray of abscissae of any shape
    :param rtol: relative tolerance on the integral
    :param atol: absolute floor for the tolerance
    :param panels: initial number of equal panels
    :param budget: maximum number of panels before giving up
    :param min_width: panels narrower than this are not split further
    :raises NoConvergence: carrying the partial value when the budget or
        the minimum width is exhausted
    """
    edges = np.linspace(a, b, panels + 1)
    lo, hi = edges[:-1], edges[1:]
    span = float(b - a)
    done_value, done_error, used = [], [], panels
    while True:
        if not len(lo):
            return float(np.sum(done_value))
        value, error = _panel_estimates(f, lo, hi)
        total = np.sum(done_value) + np.sum(value)
        total_error = np.sum(done_error) + np.sum(error)
        tol = max(rtol * abs(total), atol)
        if total_error <= tol:
            logger.debug(
                "integral over [%g, %g] converged on %d panels", a, b, used
            )
            return float(total)
        width = hi - lo
        accept = error <= tol * width / span
        stuck = ~accept & (width < 2 * min_width)
        if np.any(stuck) or used + np.count_nonzero(~accept) > budget:
            logger.warning(
                "integral over [%g, %g] not converged: error %.3g > %.3g on %d panels",
                a, b, total_error, tol, used,
            )
            raise NoConvergence(
                "quadrature did not reach rtol=%g" % rtol,
                partial=float(total),
                panels=used,
            )
        done_value.extend(value[accept])
        done_error.extend(error[accept])
        split_lo, split_hi = lo[~accept], hi[~accept]
        split_mid = 0.5 * (split_lo + split_hi)
        lo = np.concatenate([split_lo, split_mid])
        hi = np.concatenate([split_mid, split_hi])
        used += len(split_lo)
