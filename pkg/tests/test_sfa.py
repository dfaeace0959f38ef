import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weasel2.errors import InsufficientData, InvalidWindow
from weasel2.sfa import (
    EQUI_DEPTH,
    EQUI_WIDTH,
    SfaConfig,
    SfaModel,
    compute_breakpoints,
    fit_sfa,
    fit_sfa_series,
    n_components,
    select_coefficients,
    series_words,
    transform_word,
    window_dft,
)

from oracles import brute_word, direct_dft, median, two_pass_variance_ranking


def test_dft_of_constant_window():
    c = window_dft([1, 1, 1, 1], scale_std=False)
    np.testing.assert_allclose(c, [4, 0, 0, 0, 0, 0], atol=1e-12)


def test_dft_of_alternating_window():
    expected = direct_dft([1, 0, -1, 0])
    np.testing.assert_allclose(expected, [0, 0, 2, 0, 0, 0], atol=1e-12)
    np.testing.assert_allclose(window_dft([1, 0, -1, 0], scale_std=False), expected, atol=1e-12)


def test_std_guard_on_flat_window():
    x = np.full(9, 3.0) + 1e-10 * np.arange(9)
    np.testing.assert_array_equal(window_dft(x, True), window_dft(x, False))


@pytest.mark.parametrize("w", [2, 3, 4, 7, 8, 33, 64, 101])
@pytest.mark.parametrize("scale_std", [False, True])
def test_dft_matches_direct_sum(w, scale_std):
    x = np.random.default_rng(w).normal(size=w) * 5 + 2
    np.testing.assert_allclose(window_dft(x, scale_std), direct_dft(x, scale_std), rtol=0, atol=1e-9)


def test_dc_and_nyquist_imaginary_parts_are_zero():
    rng = np.random.default_rng(1)
    for w in (6, 7, 8, 9):
        c = window_dft(rng.normal(size=w))
        assert c[1] == 0.0
        if w % 2 == 0:
            assert c[-1] == 0.0
        assert len(c) == n_components(w)


def test_scale_invariance_with_std_scaling():
    rng = np.random.default_rng(3)
    x = rng.normal(size=16)
    model = fit_sfa(rng.normal(size=(200, 16)), SfaConfig(16, 8))
    for c in (0.001, 0.5, 7.0, 1e4):
        np.testing.assert_allclose(window_dft(c * x), window_dft(x), atol=1e-9)
        assert transform_word(c * x, model) == transform_word(x, model)


def test_select_unique_maximum():
    rng = np.random.default_rng(0)
    M = rng.normal(size=(100, 6)) * 0.5
    M[:, 3] = rng.normal(size=100) * np.sqrt(5.0)
    assert select_coefficients(M, 1) == [3]


def test_zero_variance_column_not_selected():
    rng = np.random.default_rng(0)
    C = window_dft(rng.normal(size=(50, 10)))
    assert 1 not in select_coefficients(C, 8)


def test_select_matches_two_pass_oracle():
    M = np.random.default_rng(11).normal(size=(50, 10)) * np.arange(1, 11)[::-1] ** 0.3
    assert select_coefficients(M, 4) == two_pass_variance_ranking(M, 4)


def test_select_needs_two_windows():
    with pytest.raises(InsufficientData):
        select_coefficients(np.ones((1, 4)), 2)


def test_select_ties_prefer_lower_index():
    assert select_coefficients(np.zeros((5, 6)), 3) == [0, 1, 2]


@settings(max_examples=50)
@given(st.integers(0, 10_000))
def test_select_is_row_order_invariant(seed):
    rng = np.random.default_rng(seed)
    M = rng.normal(size=(40, 8)) * rng.uniform(0.5, 3.0, size=8)
    perm = rng.permutation(40)
    assert select_coefficients(M, 5) == select_coefficients(M[perm], 5)


def test_breakpoint_examples():
    assert median([1, 2, 3, 4]) == 2.5
    assert compute_breakpoints([1, 2, 3, 4], EQUI_DEPTH) == 2.5
    assert compute_breakpoints([0, 3, 4, 1], EQUI_WIDTH) == 2.0
    for strategy in (EQUI_DEPTH, EQUI_WIDTH):
        assert compute_breakpoints([7, 7, 7], strategy) == 7.0


def test_breakpoint_empty_sample():
    with pytest.raises(InsufficientData):
        compute_breakpoints([], EQUI_DEPTH)


@given(st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=200, unique=True))
def test_equi_depth_balance(values):
    t = compute_breakpoints(values, EQUI_DEPTH)
    below = sum(v < t for v in values)
    assert abs(below - (len(values) - below)) <= 1
    assert t == median(values)


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200))
def test_equi_width_midpoint(values):
    t = compute_breakpoints(values, EQUI_WIDTH)
    assert abs(t - (min(values) + max(values)) / 2) <= 1e-12 * max(1.0, abs(t))


def test_word_bit_order():
    bits = (1, 0, 1, 1, 0, 0, 1, 0)
    # thresholds placed one unit below/above each selected component
    w = 16
    x = np.random.default_rng(5).normal(size=w)
    coeffs = direct_dft(x, True)
    selected = (2, 3, 4, 5, 6, 7, 8, 9)
    bps = tuple(coeffs[i] - 1.0 if b else coeffs[i] + 1.0 for i, b in zip(selected, bits))
    model = SfaModel(SfaConfig(w, 8), selected, bps)
    assert transform_word(x, model) == 0b10110010 == 178


def test_word_on_breakpoints_is_all_ones():
    w = 12
    x = np.random.default_rng(8).normal(size=w)
    c = window_dft(x)
    selected = (2, 3, 4, 5, 6, 7, 8)
    model = SfaModel(SfaConfig(w, 7), selected, tuple(c[i] for i in selected))
    assert transform_word(x, model) == 2 ** 7 - 1


def test_word_length_mismatch():
    model = SfaModel(SfaConfig(8, 7), tuple(range(2, 9)), (0.0,) * 7)
    with pytest.raises(InvalidWindow):
        transform_word(np.zeros(9), model)


@pytest.mark.parametrize("scale_std", [True, False])
def test_word_matches_brute_force(scale_std):
    rng = np.random.default_rng(21)
    w = 20
    model = fit_sfa(rng.normal(size=(300, w)), SfaConfig(w, 8, scale_std=scale_std))
    for _ in range(50):
        x = rng.normal(size=w)
        assert transform_word(x, model) == brute_word(x, model.selected, model.breakpoints, scale_std)


def test_config_rejects_oversized_word():
    with pytest.raises(InvalidWindow):
        SfaConfig(4, 7)
    SfaConfig(4, 6)


def test_fit_on_identical_windows():
    W = np.tile(np.arange(10.0), (30, 1))
    model = fit_sfa(W, SfaConfig(10, 7))
    assert model.selected == tuple(range(7))
    words = {transform_word(row, model) for row in W}
    assert len(words) == 1


def test_fit_two_clusters_dc_bit():
    rng = np.random.default_rng(4)
    low = rng.normal(0.0, 0.1, size=(100, 16))
    high = rng.normal(5.0, 0.1, size=(100, 16))
    model = fit_sfa(np.vstack([low, high]), SfaConfig(16, 7, binning=EQUI_DEPTH, scale_std=False))
    assert model.selected[0] == 0
    dc_low, dc_high = low.sum(axis=1).mean(), high.sum(axis=1).mean()
    assert dc_low < model.breakpoints[0] < dc_high
    top = 1 << 6
    assert all(transform_word(x, model) & top == 0 for x in low)
    assert all(transform_word(x, model) & top for x in high)


def test_fit_matches_pipeline_oracle():
    rng = np.random.default_rng(99)
    w, l = 12, 8
    W = rng.normal(size=(1000, w)) + np.linspace(0, 2, w)
    model = fit_sfa(W, SfaConfig(w, l, binning=EQUI_DEPTH))
    coeffs = np.array([direct_dft(x, True) for x in W])
    selected = two_pass_variance_ranking(coeffs, l)
    assert list(model.selected) == selected
    bps = [median(coeffs[:, i]) for i in selected]
    np.testing.assert_allclose(model.breakpoints, bps, atol=1e-9)
    # brute force with the fitted thresholds: identical words
    for x in W[:200]:
        assert transform_word(x, model) == brute_word(x, model.selected, model.breakpoints)


def test_fit_needs_two_windows():
    with pytest.raises(InsufficientData):
        fit_sfa(np.zeros((1, 8)), SfaConfig(8, 7))


def test_series_fit_pools_all_windows():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(5, 30))
    w = 9
    windows = np.array([row[i:i + w] for row in X for i in range(30 - w + 1)])
    a = fit_sfa_series(X, SfaConfig(w, 8))
    b = fit_sfa(windows, SfaConfig(w, 8))
    assert a.selected == b.selected
    np.testing.assert_allclose(a.breakpoints, b.breakpoints, atol=1e-12)
    codes = series_words(X, a)
    assert codes.shape == (5, 22)
    assert codes.reshape(-1).tolist() == [transform_word(x, a) for x in windows]


@settings(max_examples=30)
@given(st.integers(2, 40), st.integers(0, 1000))
def test_codes_in_range(w, seed):
    rng = np.random.default_rng(seed)
    l = min(8, n_components(w))
    model = fit_sfa(rng.normal(size=(20, w)), SfaConfig(w, l))
    codes = series_words(rng.normal(size=(3, w + 10)) * 10, model)
    assert codes.min() >= 0 and codes.max() < 2 ** l
