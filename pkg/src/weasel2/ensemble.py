"""Randomised configuration ensemble and the full dictionary transform."""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .core import LabeledDataset, first_order_diff, validate_dataset
from .dictionary import COUNT_DTYPE, N_SLOTS, bags_of_words
from .dilation import dilation_order, sample_dilation
from .errors import FitError, InvalidWindow, ShapeMismatch
from .sfa import (
    BINNING_STRATEGIES,
    WORD_LENGTHS,
    SfaConfig,
    fit_sfa_series,
    n_components,
)

log = logging.getLogger(__name__)

_MAX_RESAMPLE = 100


def default_rmax(m: int, n: int) -> int:
    if m <= 250:
        return 50
    if n <= 100:
        return 100
    return 150


def default_wmax(n: int) -> int:
    if n < 100:
        v = 24
    elif n < 500:
        v = 44
    else:
        v = 84
    return min(n, v)


def memory_estimate(m: int, r_max: int, use_diff: bool = True) -> int:
    """Bytes needed for the ``m`` training feature rows at 4 bytes per count."""
    channels = 2 if use_diff else 1
    return N_SLOTS * r_max * m * channels * np.dtype(COUNT_DTYPE).itemsize


@dataclass(frozen=True)
class EnsembleParams:
    """Ensemble hyper-parameters. ``None`` for ``w_max``/``r_max`` means auto."""

    w_min: int = 4
    w_max: Optional[int] = None
    r_max: Optional[int] = None
    seed: int = 0
    use_diff: bool = True
    scale_std: bool = True

    @property
    def channels(self) -> int:
        return 2 if self.use_diff else 1

    def resolve(self, m: int, n: int) -> "EnsembleParams":
        """Fill in the auto values for a training set of ``m`` series of length ``n``."""
        w_max = self.w_max if self.w_max is not None else default_wmax(n)
        r_max = self.r_max if self.r_max is not None else default_rmax(m, n)
        if self.w_max is None:
            log.info("w_max=%d (auto, n=%d)", w_max, n)
        if self.r_max is None:
            log.info("r_max=%d (auto, m=%d, n=%d)", r_max, m, n)
        resolved = replace(self, w_max=w_max, r_max=r_max)
        resolved.check()
        return resolved

    def check(self) -> None:
        if self.w_min < 4:
            raise ValueError(f"w_min must be >= 4, got {self.w_min}")
        if self.w_max is not None and self.w_max < self.w_min:
            raise ValueError(f"w_max={self.w_max} below w_min={self.w_min}")
        if self.r_max is not None and self.r_max < 1:
            raise ValueError(f"r_max must be >= 1, got {self.r_max}")


@dataclass(frozen=True)
class ConfigDraw:
    w: int
    d: int
    l: int
    binning: str

    def sfa_config(self, scale_std: bool = True) -> SfaConfig:
        # windows of length 4 or 5 only have 6 Fourier components
        return SfaConfig(
            window_length=self.w,
            word_length=min(self.l, n_components(self.w)),
            binning=self.binning,
            scale_std=scale_std,
        )


def draw_configs(rng: np.random.Generator, params: EnsembleParams, n: int) -> list:
    """Draw ``params.r_max`` independent configurations for length-``n`` series."""
    if params.w_max is None or params.r_max is None:
        raise ValueError("params must be resolved before drawing")
    if n < params.w_min:
        raise InvalidWindow(f"series length {n} below w_min={params.w_min}")
    w_hi = min(params.w_max, n)
    # the difference channel is one point shorter than the raw series
    w_fit = n - 1 if params.use_diff else n
    draws = []
    for _ in range(params.r_max):
        for _attempt in range(_MAX_RESAMPLE):
            w = int(rng.integers(params.w_min, w_hi, endpoint=True))
            if w <= w_fit:
                break
        else:
            raise InvalidWindow(
                f"no window length in [{params.w_min}, {w_hi}] fits the "
                f"difference channel of length {n - 1}"
            )
        d = sample_dilation(rng, n, w)
        l = int(rng.choice(WORD_LENGTHS))
        binning = BINNING_STRATEGIES[int(rng.integers(0, len(BINNING_STRATEGIES)))]
        draws.append(ConfigDraw(w, d, l, binning))
    return draws


def _channels(X: np.ndarray, use_diff: bool) -> list:
    return [X, first_order_diff(X)] if use_diff else [X]


@dataclass(frozen=True)
class FittedTransform:
    params: EnsembleParams
    draws: tuple
    models_raw: tuple
    models_diff: tuple
    n_train: int

    @property
    def channels(self) -> int:
        return self.params.channels

    @property
    def feature_dim(self) -> int:
        return self.channels * N_SLOTS * len(self.draws)

    def models(self, r: int) -> list:
        if self.params.use_diff:
            return [self.models_raw[r], self.models_diff[r]]
        return [self.models_raw[r]]

    def transform(self, X, threads: int = 1) -> np.ndarray:
        X = _as_matrix(X)
        if X.shape[1] != self.n_train:
            raise ShapeMismatch(
                f"model was fitted on series of length {self.n_train}, got {X.shape[1]}"
            )
        chans = _channels(X, self.params.use_diff)

        def one(r):
            order_cache = {}
            return [
                bags_of_words(_dilate(C, self.draws[r].d, order_cache), model)
                for C, model in zip(chans, self.models(r))
            ]

        return self._assemble(X.shape[0], _run(one, len(self.draws), threads))

    def _assemble(self, m: int, per_draw: list) -> np.ndarray:
        out = np.zeros((m, self.feature_dim), dtype=COUNT_DTYPE)
        for r, bags in enumerate(per_draw):
            for c, bag in enumerate(bags):
                start = (r * self.channels + c) * N_SLOTS
                out[:, start:start + N_SLOTS] = bag
        return out


def _as_matrix(X) -> np.ndarray:
    if isinstance(X, LabeledDataset):
        report = validate_dataset(X, for_fit=False)
        if not report.ok:
            raise ShapeMismatch("; ".join(report.violations))
        return X.X
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ShapeMismatch(f"expected a 2-D array of series, got {X.ndim} dimensions")
    return X


def _dilate(X: np.ndarray, d: int, cache: dict) -> np.ndarray:
    n = X.shape[1]
    if (n, d) not in cache:
        cache[(n, d)] = dilation_order(n, d)
    return X[:, cache[(n, d)]]


def _run(fn, count: int, threads: int) -> list:
    if threads <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, range(count)))


def fit(dataset, params: EnsembleParams, threads: int = 1):
    """Draw configurations, fit one SFA model per draw and channel.

    Returns the fitted transform and the ``(m, dim)`` training count matrix.
    """
    if isinstance(dataset, LabeledDataset):
        report = validate_dataset(dataset, for_fit=False)
        if not report.ok:
            raise FitError("; ".join(report.violations))
    X = _as_matrix(dataset)
    m, n = X.shape
    if m < 1:
        raise FitError("cannot fit on an empty dataset")
    if not np.all(np.isfinite(X)):
        raise FitError("series contain non-finite values")
    params.check()
    params = params.resolve(m, n)
    rng = np.random.default_rng(params.seed)
    draws = tuple(draw_configs(rng, params, n))
    chans = _channels(X, params.use_diff)

    def one(r):
        draw = draws[r]
        cfg = draw.sfa_config(params.scale_std)
        models, bags = [], []
        order_cache = {}
        for C in chans:
            Cd = _dilate(C, draw.d, order_cache)
            model = fit_sfa_series(Cd, cfg)
            models.append(model)
            bags.append(bags_of_words(Cd, model))
        return models, bags

    results = _run(one, len(draws), threads)
    ft = FittedTransform(
        params=params,
        draws=draws,
        models_raw=tuple(res[0][0] for res in results),
        models_diff=tuple(res[0][1] for res in results) if params.use_diff else (),
        n_train=n,
    )
    features = ft._assemble(m, [res[1] for res in results])
    return ft, features


def transform(ft: FittedTransform, dataset, threads: int = 1) -> np.ndarray:
    return ft.transform(dataset, threads=threads)
