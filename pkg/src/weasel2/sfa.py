"""Symbolic Fourier Approximation with a binary alphabet.

Each window is mapped to its one-sided DFT, laid out as interleaved
``[re0, im0, re1, im1, ...]`` components. Fitting keeps the ``l``
components with the largest variance over all training windows and puts
one unsupervised threshold on each of them; a window's word then has one
bit per kept component.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import InsufficientData, InvalidWindow

EQUI_DEPTH = "equi-depth"
EQUI_WIDTH = "equi-width"
BINNING_STRATEGIES = (EQUI_DEPTH, EQUI_WIDTH)
WORD_LENGTHS = (7, 8)

STD_GUARD = 1e-8
# cap on floats materialised per FFT block
_BLOCK_BUDGET = 1 << 22


def n_components(w: int) -> int:
    return 2 * (w // 2 + 1)


@dataclass(frozen=True)
class SfaConfig:
    window_length: int
    word_length: int = 8
    binning: str = EQUI_DEPTH
    scale_std: bool = True
    alphabet_size: int = 2
    normalize_mean: bool = False

    def __post_init__(self):
        if self.window_length < 2:
            raise InvalidWindow(f"window length must be >= 2, got {self.window_length}")
        if not 1 <= self.word_length <= n_components(self.window_length):
            raise InvalidWindow(
                f"word length {self.word_length} exceeds the "
                f"{n_components(self.window_length)} components of a "
                f"length-{self.window_length} window"
            )
        if self.binning not in BINNING_STRATEGIES:
            raise ValueError(f"unknown binning strategy {self.binning!r}")
        if self.alphabet_size != 2 or self.normalize_mean:
            raise ValueError("only alphabet_size=2 without mean normalisation is supported")


@dataclass(frozen=True)
class SfaModel:
    config: SfaConfig
    selected: tuple
    breakpoints: tuple

    def __post_init__(self):
        if len(self.selected) != self.config.word_length:
            raise ValueError("selected indices must match the word length")
        if len(self.breakpoints) != len(self.selected):
            raise ValueError("one breakpoint per selected component required")
        if len(set(self.selected)) != len(self.selected):
            raise ValueError("selected indices must be distinct")

    def words_from_coefficients(self, coeffs: np.ndarray) -> np.ndarray:
        """Codes for a ``(N, n_components)`` coefficient matrix."""
        values = coeffs[:, list(self.selected)]
        bits = values >= np.asarray(self.breakpoints)
        l = self.config.word_length
        weights = np.left_shift(1, np.arange(l - 1, -1, -1))
        return bits.astype(np.int64) @ weights


def window_dft(window, scale_std: bool = True) -> np.ndarray:
    """One-sided DFT of ``window`` as interleaved real/imaginary parts.

    Accepts a single window or a stack of windows in the last axis. The
    DC term is kept. With ``scale_std`` each window is first divided by its
    (population) standard deviation, or by 1 when that is below 1e-8.
    """
    x = np.asarray(window, dtype=np.float64)
    if x.shape[-1] < 2:
        raise InvalidWindow("window length must be >= 2")
    if scale_std:
        std = x.std(axis=-1, keepdims=True)
        x = x / np.where(std < STD_GUARD, 1.0, std)
    c = np.fft.rfft(x, axis=-1)
    return np.ascontiguousarray(c).view(np.float64)


def select_coefficients(coeff_matrix, l: int) -> list:
    """Indices of the ``l`` highest-variance columns, by descending variance."""
    C = np.asarray(coeff_matrix, dtype=np.float64)
    if C.ndim != 2 or C.shape[0] < 2:
        raise InsufficientData("variance selection needs at least 2 windows")
    if l > C.shape[1]:
        raise InvalidWindow(f"word length {l} exceeds {C.shape[1]} components")
    D = C - C[0]
    var = ((D - D.mean(axis=0)) ** 2).mean(axis=0)
    return _rank_by_variance(var, l)


def _rank_by_variance(var: np.ndarray, l: int) -> list:
    # stable sort on -var keeps the lower index first among equal variances
    order = np.argsort(-var, kind="stable")
    return [int(i) for i in order[:l]]


def compute_breakpoints(values, binning: str) -> float:
    """Single threshold for a binary alphabet.

    Equi-depth uses the sample median, equi-width the midpoint of the
    observed range.
    """
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    if v.size == 0:
        raise InsufficientData("cannot bin an empty sample")
    if binning == EQUI_DEPTH:
        return float(np.median(v))
    if binning == EQUI_WIDTH:
        lo, hi = v.min(), v.max()
        return float(lo) if lo == hi else float((lo + hi) / 2.0)
    raise ValueError(f"unknown binning strategy {binning!r}")


def transform_word(window, model: SfaModel) -> int:
    window = np.asarray(window, dtype=np.float64)
    if window.ndim != 1 or window.shape[0] != model.config.window_length:
        raise InvalidWindow(
            f"expected a window of length {model.config.window_length}, "
            f"got shape {window.shape}"
        )
    coeffs = window_dft(window[None, :], model.config.scale_std)
    return int(model.words_from_coefficients(coeffs)[0])


def _series_blocks(X: np.ndarray, w: int, scale_std: bool) -> Iterator[np.ndarray]:
    """Coefficient matrices for all sliding windows of the rows of ``X``.

    Yields one ``(rows * (n - w + 1), n_components)`` block per chunk of
    rows, in row order.
    """
    m, n = X.shape
    per_row = (n - w + 1) * max(w, n_components(w))
    step = max(1, _BLOCK_BUDGET // max(per_row, 1))
    for start in range(0, m, step):
        windows = sliding_window_view(X[start:start + step], w, axis=1)
        yield window_dft(windows, scale_std).reshape(-1, n_components(w))


def _fit_from_blocks(blocks: Callable[[], Iterable[np.ndarray]], config: SfaConfig) -> SfaModel:
    # Two-pass variance on data shifted by the first window: exact zeros for
    # constant columns, so ties resolve by index.
    shift = None
    total = np.zeros(n_components(config.window_length))
    count = 0
    for C in blocks():
        if shift is None and len(C):
            shift = C[0].copy()
        if len(C):
            total += (C - shift).sum(axis=0)
        count += C.shape[0]
    if count < 2:
        raise InsufficientData(f"SFA fit needs at least 2 windows, got {count}")
    mean = total / count
    ss = np.zeros_like(total)
    for C in blocks():
        ss += ((C - shift - mean) ** 2).sum(axis=0)
    selected = _rank_by_variance(ss / count, config.word_length)
    # pass 3: values of the kept components
    values = np.concatenate([C[:, selected] for C in blocks()], axis=0)
    breakpoints = tuple(compute_breakpoints(values[:, i], config.binning)
                        for i in range(len(selected)))
    return SfaModel(config, tuple(selected), breakpoints)


def fit_sfa(windows, config: SfaConfig) -> SfaModel:
    """Fit on an explicit ``(N, w)`` collection of training windows."""
    W = np.asarray(windows, dtype=np.float64)
    if W.ndim != 2 or W.shape[0] < 2:
        raise InsufficientData("SFA fit needs at least 2 windows")
    if W.shape[1] != config.window_length:
        raise InvalidWindow(
            f"windows have length {W.shape[1]}, config expects {config.window_length}"
        )
    step = max(1, _BLOCK_BUDGET // W.shape[1])

    def blocks():
        for start in range(0, W.shape[0], step):
            yield window_dft(W[start:start + step], config.scale_std)

    return _fit_from_blocks(blocks, config)


def fit_sfa_series(X, config: SfaConfig) -> SfaModel:
    """Fit on every sliding window of every row of ``X``, pooled."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[1] < config.window_length:
        raise InvalidWindow(
            f"series length {X.shape[1]} shorter than window {config.window_length}"
        )
    return _fit_from_blocks(
        lambda: _series_blocks(X, config.window_length, config.scale_std), config
    )


def series_words(X, model: SfaModel) -> np.ndarray:
    """Word codes of all sliding windows, shape ``(m, n - w + 1)``."""
    X = np.asarray(X, dtype=np.float64)
    w = model.config.window_length
    if X.ndim != 2 or X.shape[1] < w:
        raise InvalidWindow(f"series of length {X.shape[-1]} shorter than window {w}")
    if X.shape[0] == 0:
        return np.empty((0, X.shape[1] - w + 1), dtype=np.int64)
    codes = np.concatenate(
        [model.words_from_coefficients(C) for C in _series_blocks(X, w, model.config.scale_std)]
    )
    return codes.reshape(X.shape[0], X.shape[1] - w + 1)
