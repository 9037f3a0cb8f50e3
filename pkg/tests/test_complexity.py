# -*- coding: utf-8 -*-

import numpy as np
import pytest

from kitaev.complexity import (
    StatePair,
    delta_profile,
    delta_theta,
    delta_theta_closed_form,
    density_limit,
    pair_complexity,
    signed_delta_theta,
    total_complexity,
)
from kitaev.exc import InvalidParameter
from kitaev.model import ModelParams, build_grid
from kitaev.oracle import overlap_complexity_check


def chain_pair(mu_r, delta_r, mu_t, delta_t, L=1000):
    return StatePair(
        ModelParams.short_range(mu_r, delta_r, L),
        ModelParams.short_range(mu_t, delta_t, L),
    )


def random_pair(rng, L=100):
    mu_r, delta_r, mu_t, delta_t = rng.uniform(-3, 3, size=4)
    return chain_pair(mu_r, delta_r, mu_t, delta_t, L)


def test_pair_needs_same_family():
    with pytest.raises(InvalidParameter):
        StatePair(ModelParams.short_range(0, 1, 100), ModelParams.short_range(0, 1, 200))
    with pytest.raises(InvalidParameter):
        StatePair(
            ModelParams.short_range(0, 1, 100), ModelParams.long_range(0, 1, 100, 1.0)
        )


def test_identical_states():
    pair = chain_pair(0.3, 1.2, 0.3, 1.2)
    k = build_grid(1000).points
    assert np.all(delta_theta(pair, k) == 0)
    report = total_complexity(pair)
    assert report.total == 0
    assert density_limit(pair) == 0


def test_maximal_angle_near_pi():
    pair = chain_pair(0.0, 1.0, 1.5, 1.0)
    assert delta_theta(pair, np.pi - 1e-6) == pytest.approx(np.pi / 2, abs=1e-5)
    assert pair_complexity(pair, np.pi - 1e-6) == pytest.approx(np.pi ** 2 / 4, abs=1e-4)


def test_vanishing_target_angle():
    # delta_t = 0 with mu_t > 1 gives theta_t = 0 at every k
    pair = chain_pair(0.0, 1.0, 2.0, 0.0)
    assert delta_theta(pair, np.pi / 2) == pytest.approx(np.pi / 4, abs=1e-15)
    assert pair_complexity(pair, np.pi / 2) == pytest.approx(np.pi ** 2 / 16, abs=1e-15)


def test_per_mode_bound(rng):
    bound = np.pi ** 2 / 4
    for _ in range(10000):
        pair = random_pair(rng, L=4)
        value = pair_complexity(pair, rng.uniform(0, np.pi))
        assert 0 <= value <= bound


def test_matches_overlap_oracle(rng):
    for _ in range(1000):
        pair = random_pair(rng, L=4)
        k = rng.uniform(0, np.pi)
        assert abs(pair_complexity(pair, k) - overlap_complexity_check(pair, k)) <= 1e-10


def test_closed_form_cross_check(rng):
    for _ in range(50):
        pair = random_pair(rng)
        k = rng.uniform(0.01, np.pi - 0.01, size=64)
        assert np.allclose(
            delta_theta_closed_form(pair, k), signed_delta_theta(pair, k), rtol=0, atol=1e-12
        )


def test_report_consistency(rng):
    for _ in range(10):
        pair = random_pair(rng, L=200)
        report = total_complexity(pair)
        assert len(report.per_mode) == 100
        assert np.all(report.per_mode >= 0) and np.all(report.per_mode <= np.pi ** 2 / 4)
        assert report.total == pytest.approx(np.sum(report.per_mode), rel=1e-12)
        assert report.density == pytest.approx(report.total / 200, rel=1e-15)
        assert 0 <= report.density <= np.pi ** 2 / 8


def test_symmetric_in_reference_and_target(rng):
    for _ in range(10):
        pair = random_pair(rng, L=200)
        forward = total_complexity(pair).total
        assert total_complexity(pair.swapped()).total == pytest.approx(forward, rel=1e-12)


def test_profile_is_folded():
    profile = delta_profile(chain_pair(-0.5, 1.0, 1.5, 1.0))
    assert len(profile.theta) == len(profile.grid) == 500
    assert np.all(profile.theta > -np.pi / 2) and np.all(profile.theta <= np.pi / 2)


def test_volume_law():
    small = total_complexity(chain_pair(0.0, 1.0, 0.5, 1.0, L=500)).total
    large = total_complexity(chain_pair(0.0, 1.0, 0.5, 1.0, L=1000)).total
    assert abs(large / small - 2) <= 0.01


def test_density_closed_form():
    pair = chain_pair(0.0, 1.0, 2.0, 0.0)
    assert density_limit(pair) == pytest.approx(np.pi ** 2 / 24, abs=1e-8)
    assert total_complexity(pair.swapped()).density == pytest.approx(np.pi ** 2 / 24, abs=1e-5)


def test_density_matches_finite_chain():
    pair = chain_pair(0.0, 1.0, 0.5, 1.0, L=2000)
    assert abs(density_limit(pair) - total_complexity(pair).density) <= 1e-3


def test_triangle_within_a_phase():
    a = ModelParams.short_range(1.5, 1.0, 1000)
    b = a.replace(mu=2.0)
    c = a.replace(mu=3.0)
    k = build_grid(1000).points
    ac = delta_theta(StatePair(a, c), k)
    ab = delta_theta(StatePair(a, b), k)
    bc = delta_theta(StatePair(b, c), k)
    assert np.all(ac <= ab + bc + 1e-15)
