import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funcdepth.exceptions import ConfigError, GridMismatchError
from funcdepth.gp import linear_trend
from funcdepth.robust import (
    ErrorTable,
    adjust_errors,
    integrated_error,
    mean_curve,
    trim_count,
    trimmed_mean,
)
from funcdepth.sample import canonical_grid

T30 = canonical_grid(30)


def test_mean_curve(constants3, rng):
    np.testing.assert_array_equal(mean_curve(constants3), np.ones(5))
    one = rng.standard_normal((1, 7))
    np.testing.assert_array_equal(mean_curve(one), one[0])
    X = rng.standard_normal((5, 9))
    by_hand = sum(X[i] for i in reversed(range(5))) / 5
    np.testing.assert_allclose(mean_curve(X), by_hand, rtol=0, atol=1e-15)


@pytest.mark.parametrize("n,alpha,k", [(10, 0.25, 2), (150, 0.2, 30), (7, 0.0, 0), (9, 0.99, 8)])
def test_trim_count(n, alpha, k):
    assert trim_count(n, alpha) == k


@pytest.mark.parametrize("alpha", [-0.1, 1.0, 1.5])
def test_trim_count_rejects(alpha):
    with pytest.raises(ConfigError):
        trim_count(10, alpha)


def test_trimmed_mean_alpha_zero_is_mean(rng):
    X = rng.standard_normal((12, 6))
    d = rng.random(12)
    np.testing.assert_array_equal(trimmed_mean(X, d, 0.0), X[np.argsort(-d, kind="stable")].mean(0))
    np.testing.assert_allclose(trimmed_mean(X, d, 0.0), mean_curve(X), atol=1e-15)


def test_trimmed_mean_drops_least_deep():
    X = np.array([[0.0] * 4, [1.0] * 4, [2.0] * 4, [100.0] * 4])
    np.testing.assert_array_equal(trimmed_mean(X, [0.5, 0.9, 0.5, 0.1], 0.25), np.ones(4))


def test_trimmed_mean_ten_curves(rng):
    X = rng.standard_normal((10, 3))
    d = np.arange(10.0)
    np.testing.assert_allclose(trimmed_mean(X, d, 0.25), X[2:].mean(0))


@settings(max_examples=50)
@given(st.lists(st.floats(0, 1), min_size=4, max_size=12), st.floats(0, 0.9))
def test_trimmed_mean_depends_only_on_order(depths, alpha):
    d = np.array(depths)
    X = np.arange(d.size * 3, dtype=float).reshape(d.size, 3) ** 1.5
    np.testing.assert_array_equal(
        trimmed_mean(X, d, alpha), trimmed_mean(X, 4 * d, alpha))
    np.testing.assert_allclose(
        trimmed_mean(X, d, alpha), trimmed_mean(X, rank_like(d), alpha), atol=1e-12)


def rank_like(d):
    # strictly increasing relabelling of the distinct values
    _, inv = np.unique(d, return_inverse=True)
    return inv.astype(float) - 100


def test_integrated_error_examples():
    truth = linear_trend(T30)
    assert integrated_error(truth, linear_trend, T30) == 0
    assert integrated_error(truth + 1, linear_trend, T30) == pytest.approx(1.0)
    # (1/30) sum_k (k/30)^2 = 9455 / 27000
    assert integrated_error(truth + T30, linear_trend, 30) == pytest.approx(9455 / 27000, rel=1e-14)


def test_integrated_error_grid_checks():
    with pytest.raises(GridMismatchError):
        integrated_error(np.zeros(29), linear_trend, T30)
    with pytest.raises(GridMismatchError):
        integrated_error(np.zeros(30), linear_trend, np.linspace(0, 1, 30))


def test_adjust_errors_examples():
    t = adjust_errors(ErrorTable(["Mean"], [[0.7], [0.2]]))
    assert np.all(t.adjusted == 0)
    t = adjust_errors(ErrorTable(["Mean", "BD2", "GBD"], [[0.5, 0.3, 0.2]]))
    np.testing.assert_allclose(t.adjusted[0], [0.3, 0.1, 0.0])


@settings(max_examples=50)
@given(st.integers(1, 6), st.integers(1, 5), st.randoms(use_true_random=False))
def test_adjusted_errors_nonnegative_with_zero_minimum(R, m, rnd):
    raw = np.array([[rnd.random() for _ in range(m)] for _ in range(R)])
    t = ErrorTable([f"m{i}" for i in range(m)], raw)
    assert np.all(t.adjusted >= 0)
    np.testing.assert_array_equal(t.adjusted.min(axis=1), 0)
    assert all(v >= 0 for v in t.sd.values())
