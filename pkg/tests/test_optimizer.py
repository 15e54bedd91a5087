import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commnorm import optimizer, witnesses
from commnorm.constants import Status, constant
from commnorm.optimizer import OptimizerConfig, Verdict, maximize_ratio, verify_constant

SMALL = OptimizerConfig(restarts=8, max_iters=150, smoothing_caps=(8, 64), polish_iters=50)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]),
       st.tuples(*[st.floats(0.1, 0.9)] * 3))
def test_analytic_gradient_matches_fd(seed, d, u):
    rng = np.random.default_rng(seed)
    theta = rng.standard_normal((3, 4 * d * d))
    ga = optimizer.gradient(theta, d, u, "analytic")
    gf = optimizer.gradient(theta, d, u, "fd", h=1e-6)
    scale = np.linalg.norm(ga, axis=1, keepdims=True)
    assert np.all(np.abs(ga - gf) <= 1e-5 * scale + 1e-7)


def test_gradient_zero_at_scale_direction(rng):
    # The log ratio is scale invariant, so the gradient is orthogonal to theta
    # within each of the X and Y blocks.
    d = 2
    theta = rng.standard_normal((4, 4 * d * d))
    g = optimizer.gradient(theta, d, (0.4, 0.5, 0.3))
    k = 2 * d * d
    assert np.allclose(np.sum(g[:, :k] * theta[:, :k], axis=1), 0, atol=1e-10)
    assert np.allclose(np.sum(g[:, k:] * theta[:, k:], axis=1), 0, atol=1e-10)


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(restarts=0)
    with pytest.raises(ValueError):
        OptimizerConfig(step_init=-1)
    with pytest.raises(ValueError):
        OptimizerConfig(gradient="newton")
    with pytest.raises(ValueError):
        OptimizerConfig(smoothing_caps=())


def test_dimension_check():
    with pytest.raises(ValueError):
        maximize_ratio(2, 2, 2, 1, SMALL)


def test_deterministic():
    a = maximize_ratio(3, "3/2", 4, 3, SMALL)
    b = maximize_ratio(3, "3/2", 4, 3, SMALL)
    assert a.best_ratio == b.best_ratio
    assert a.best_restart == b.best_restart
    assert np.array_equal(a.best_pair.X, b.best_pair.X)
    assert np.array_equal(a.ratios, b.ratios)


def test_seed_changes_random_starts():
    a = maximize_ratio(3, "3/2", 4, 3, replace(SMALL, polish_iters=0, max_iters=1))
    b = maximize_ratio(3, "3/2", 4, 3, replace(SMALL, polish_iters=0, max_iters=1, seed=1))
    assert not np.array_equal(a.ratios[-SMALL.restarts:], b.ratios[-SMALL.restarts:])


@pytest.mark.parametrize("t,d", [((2, 2, 2), 3), ((1, "inf", "inf"), 3), ((4, "3/2", "3/2"), 2),
                                 (("inf", 1, 1), 2), ((1, 3, 6), 4)])
def test_warm_start_dominance(t, d):
    rep = maximize_ratio(*t, d, SMALL)
    best_recipe = max(witnesses.ratio(witnesses.build(rc), *t) for rc in witnesses.applicable_recipes(d))
    assert rep.best_ratio >= best_recipe


@pytest.mark.parametrize("t,d", [((2, 2, 2), 2), ((3, 3, "3/2"), 2), (("3/2", 4, 2), 3),
                                 ((1, 1, 2), 2), (("inf", 2, 3), 3), ((2, 3, 3), 3)])
def test_never_exceeds_exact(t, d):
    res = constant(*t, d)
    assert res.status is Status.EXACT
    rep = maximize_ratio(*t, d, SMALL)
    assert rep.best_ratio <= res.value * (1 + 1e-8)


def test_verify_trivial_warm_start():
    rep = verify_constant(1, 1, 2, 2, SMALL)
    assert rep.verdict is Verdict.ATTAINED_WITHIN and rep.eps == SMALL.attain_eps
    assert rep.best_ratio == pytest.approx(2.0, abs=1e-12)
    assert rep.start_label == "Nilpotent"


def test_verify_star_polygon():
    rep = verify_constant(1, "inf", "inf", 3, SMALL)
    assert rep.verdict is Verdict.ATTAINED_WITHIN
    assert rep.best_ratio == pytest.approx(3 * math.sqrt(3), rel=1e-12)


def test_verify_bracket_probe():
    rep = verify_constant(4, "3/2", "3/2", 2, SMALL)
    assert rep.verdict is Verdict.BRACKET_PROBE
    assert 2 ** 0.25 <= rep.best_ratio <= math.sqrt(2) + 1e-8
    assert 0 <= rep.bracket_position <= 1


def test_random_ascent_finds_frobenius_constant():
    cfg = OptimizerConfig(restarts=20, max_iters=300, smoothing_caps=(4,), polish_iters=200)
    rep = maximize_ratio(2, 2, 2, 3, cfg)
    n_warm = len(witnesses.applicable_recipes(3))
    random_best = rep.ratios[n_warm:].max()
    assert random_best == pytest.approx(math.sqrt(2), abs=1e-3)
    assert random_best <= math.sqrt(2) * (1 + 1e-8)


def test_report_dict():
    rep = verify_constant(2, 2, 2, 2, SMALL)
    doc = rep.to_dict(with_pair=True)
    assert doc["verdict"] == "AttainedWithin"
    assert doc["predicted"]["status"] == "Exact"
    assert set(doc["pair"]) == {"X", "Y"}
