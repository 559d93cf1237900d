import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from funcdepth.bands import (
    CorrectedBand,
    contains_graph,
    corrected_band,
    corrected_contains,
    corrected_inside_mask,
    dominance,
    envelope,
    inside_mask,
    longest_false_run,
    longest_runs,
    longest_true_run,
    measure,
)
from funcdepth.exceptions import BadIndicesError
from funcdepth.sample import canonical_grid

T10 = canonical_grid(10)
T30 = canonical_grid(30)


def const(c, v=10):
    return np.full(v, float(c))


def test_envelope_constants():
    env = envelope(np.array([const(0), const(2)]), [0, 1])
    assert np.all(env.lower == 0) and np.all(env.upper == 2)


def test_envelope_crossing_lines():
    env = envelope(np.array([T10, 1 - T10]), [0, 1])
    np.testing.assert_array_equal(env.lower, np.minimum(T10, 1 - T10))


@pytest.mark.parametrize("idx", [[0, 0], [0], [0, 5]])
def test_envelope_bad_indices(idx):
    with pytest.raises(BadIndicesError):
        envelope(np.array([const(0), const(2)]), idx)


def test_contains_graph_examples():
    band = envelope(np.array([const(0), const(2)]), [0, 1])
    assert contains_graph(const(1), band)
    assert not contains_graph(const(3), band)
    band12 = envelope(np.array([const(1), const(2)]), [0, 1])
    assert contains_graph(const(1), band12)


def test_inside_mask_examples():
    band = envelope(np.array([T10, 1 - T10]), [0, 1])
    assert inside_mask(const(0.5), band).all()
    band01 = envelope(np.array([const(0), const(1)]), [0, 1])
    assert not inside_mask(const(2), band01).any()


def test_inside_mask_line_vs_constant_band():
    band = envelope(np.array([const(0.25, 30), const(0.75, 30)]), [0, 1])
    mask = inside_mask(T30, band)
    # 0.25 <= k/30 <= 0.75  <=>  7.5 <= k <= 22.5
    expected = np.array([8 <= k <= 22 for k in range(1, 31)])
    np.testing.assert_array_equal(mask, expected)
    assert mask.sum() == 15


def test_dominance_examples():
    mask, L = dominance(const(0), const(1))
    assert mask.all() and L == 1.0
    mask, L = dominance(T10, 1 - T10)
    # 1 - 2k/10 >= 0 for k = 1..5
    np.testing.assert_array_equal(mask, np.arange(1, 11) <= 5)
    assert L == 0.5
    x = np.linspace(0, 1, 10)
    assert dominance(x, x)[1] == 1.0


def test_corrected_band_constants():
    cb = corrected_band(const(0), const(1))
    assert cb.domain.all() and cb.weight == 1.0
    assert np.all(cb.lower == 0) and np.all(cb.upper == 1)


def test_corrected_band_crossing_lines():
    cb = corrected_band(T10, 1 - T10)
    # t and 1 - t tie at k = 5, so L_ab = 5/10 and L_ba = 6/10; the
    # first orientation wins because L_ab >= 1/2
    assert dominance(1 - T10, T10)[1] == 0.6
    assert not cb.flipped
    np.testing.assert_array_equal(cb.domain, np.arange(1, 11) <= 5)
    assert cb.weight == 0.5 == measure(cb.domain)


def test_corrected_band_line_vs_constant():
    cb = corrected_band(T10, const(0.9))
    np.testing.assert_array_equal(cb.domain, T10 <= 0.9)
    assert cb.weight == 0.9
    np.testing.assert_array_equal(cb.lower, T10)


def test_corrected_band_flips_orientation():
    cb = corrected_band(const(1), const(0))
    assert cb.flipped and cb.weight == 1.0
    assert np.all(cb.lower == 0)


def test_corrected_contains_empty_domain():
    cb = CorrectedBand(np.zeros(10, bool), const(0), const(1), 0.0, False)
    assert corrected_contains(const(5), cb)


def test_corrected_contains_crossing_lines():
    cb = corrected_band(T10, 1 - T10)
    # needs t_k <= 0.25 <= 1 - t_k on k = 1..5; fails at k = 3, 4, 5
    assert not corrected_contains(const(0.25), cb)
    assert corrected_contains(cb.lower, cb)


def test_corrected_inside_mask_examples():
    cb = corrected_band(T10, 1 - T10)
    m = corrected_inside_mask(const(0.5), cb)
    np.testing.assert_array_equal(m, np.arange(1, 11) <= 5)
    assert measure(m) == 0.5
    assert not corrected_inside_mask(const(10), cb).any()
    np.testing.assert_array_equal(corrected_inside_mask(cb.lower, cb), cb.domain)


RUNS = np.array([1, 1, 1, 0, 0, 0, 1, 1, 0, 0], bool)


def test_longest_runs_examples():
    assert longest_true_run(RUNS) == 0.3
    assert longest_false_run(RUNS) == 0.3
    assert longest_true_run(np.ones(10, bool)) == 1.0
    assert longest_true_run(np.zeros(10, bool)) == 0.0
    assert longest_false_run(np.ones(10, bool)) == 0.0
    assert longest_false_run(np.zeros(10, bool)) == 1.0


def _runs_naive(bits):
    best = {True: 0, False: 0}
    cur, prev = 0, None
    for b in bits:
        cur = cur + 1 if b == prev else 1
        prev = b
        best[b] = max(best[b], cur)
    return best[True], best[False]


@given(arrays(bool, st.tuples(st.integers(1, 6), st.integers(1, 25))))
def test_longest_runs_vectorized_matches_naive(block):
    best_in, best_out = longest_runs(block, axis=1)
    for row, bi, bo in zip(block, best_in, best_out):
        assert (bi, bo) == _runs_naive(list(row))


@given(arrays(bool, st.integers(1, 40)))
def test_run_measure_chain(mask):
    assert longest_true_run(mask) <= measure(mask) + 1e-15
    assert measure(mask) <= 1 - longest_false_run(mask) + 1e-15


curves = st.integers(2, 20).flatmap(lambda v: arrays(
    float, (3, v), elements=st.floats(-5, 5, allow_nan=False, width=32)))


@settings(max_examples=200)
@given(curves)
def test_band_properties(X):
    x, a, b = X
    band = envelope(X[1:], [0, 1])
    assert contains_graph(x, band) == (measure(inside_mask(x, band)) == 1)
    assert inside_mask(a, band).all() and inside_mask(b, band).all()
    m_ab, l_ab = dominance(a, b)
    m_ba, l_ba = dominance(b, a)
    assert np.all(m_ab | m_ba) and l_ab + l_ba >= 1
    cb = corrected_band(a, b)
    assert cb.weight == measure(cb.domain)
    assert np.all(cb.lower[cb.domain] <= cb.upper[cb.domain])
    if l_ab + l_ba == 1:
        assert cb.weight >= 0.5


@settings(max_examples=100)
@given(curves, st.floats(-3, 3), st.sampled_from([np.exp, np.arctan, lambda v: v ** 3]))
def test_band_ops_monotone_invariant(X, shift, f):
    x, a, b = X
    Y = f(X + shift)
    y, c, d = Y
    # strictly increasing maps preserve order but float rounding may merge
    # nearly equal values; only check inputs whose order survives exactly
    if not np.array_equal(np.argsort(X.ravel(), kind="stable"),
                          np.argsort(Y.ravel(), kind="stable")):
        return
    if len(np.unique(X)) != len(np.unique(Y)):
        return
    band_x, band_y = envelope(X[1:], [0, 1]), envelope(Y[1:], [0, 1])
    np.testing.assert_array_equal(inside_mask(x, band_x), inside_mask(y, band_y))
    cx, cy = corrected_band(a, b), corrected_band(c, d)
    np.testing.assert_array_equal(cx.domain, cy.domain)
    np.testing.assert_array_equal(corrected_inside_mask(x, cx), corrected_inside_mask(y, cy))
