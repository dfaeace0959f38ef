"""One-vs-rest ridge classifier with exact leave-one-out alpha selection.

The intercept is left unpenalised, so the smoother matrix is
``1 1^T / m + Xc (Xc^T Xc + alpha I)^-1 Xc^T`` with ``Xc`` the centred
features. Its diagonal gives the exact leave-one-out residual
``r_i / (1 - h_ii)`` for every alpha from a single eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FitError, ShapeMismatch

DEFAULT_ALPHAS = tuple(float(a) for a in np.logspace(-1, 5, 10))


@dataclass(frozen=True)
class RidgeModel:
    classes: tuple
    weights: np.ndarray  # (outputs, dim)
    intercepts: np.ndarray  # (outputs,)
    alpha: float
    feature_means: np.ndarray  # (dim,)
    alphas: tuple = DEFAULT_ALPHAS
    cv_errors: tuple = field(default=(), compare=False)

    def __post_init__(self):
        # reduction order (and so rounding) depends on memory layout
        for name in ("weights", "intercepts", "feature_means"):
            value = np.ascontiguousarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, value)

    @property
    def dim(self) -> int:
        return self.weights.shape[1]

    def decision_function(self, x) -> np.ndarray:
        x = np.ascontiguousarray(x, dtype=np.float64)
        if x.ndim == 1:
            x = x[None, :]
        if x.shape[1] != self.dim:
            raise ShapeMismatch(f"model expects {self.dim} features, got {x.shape[1]}")
        return _scores(self, x)

    def predict(self, x) -> list:
        return predict(self, x)


def encode_targets(labels, classes) -> np.ndarray:
    """±1 one-vs-rest targets; a single column for two classes."""
    index = {c: i for i, c in enumerate(classes)}
    idx = np.array([index[lab] for lab in labels])
    Y = -np.ones((len(idx), len(classes)))
    Y[np.arange(len(idx)), idx] = 1.0
    if len(classes) == 2:
        return Y[:, 1:]
    return Y


class _Decomposition:
    """Eigendecomposition of whichever of XcXc^T / Xc^TXc is smaller."""

    def __init__(self, Xc: np.ndarray):
        m, dim = Xc.shape
        self.Xc = Xc
        self.gram = m <= dim
        K = Xc @ Xc.T if self.gram else Xc.T @ Xc
        eigvals, self.Q = np.linalg.eigh(K)
        self.eigvals = np.clip(eigvals, 0.0, None)
        if not self.gram:
            self.XQ = Xc @ self.Q

    def hat_diag(self, alpha: float) -> np.ndarray:
        if self.gram:
            return (self.Q ** 2) @ (self.eigvals / (self.eigvals + alpha))
        return (self.XQ ** 2) @ (1.0 / (self.eigvals + alpha))

    def fitted(self, Yc: np.ndarray, alpha: float) -> np.ndarray:
        if self.gram:
            shrink = self.eigvals / (self.eigvals + alpha)
            return self.Q @ (shrink[:, None] * (self.Q.T @ Yc))
        return self.XQ @ ((self.XQ.T @ Yc) / (self.eigvals + alpha)[:, None])

    def weights(self, Yc: np.ndarray, alpha: float) -> np.ndarray:
        """Ridge solution, shape ``(dim, outputs)``."""
        inv = 1.0 / (self.eigvals + alpha)
        if self.gram:
            dual = self.Q @ (inv[:, None] * (self.Q.T @ Yc))
            return self.Xc.T @ dual
        return self.Q @ (inv[:, None] * (self.XQ.T @ Yc))


def loo_errors(x, Y, alphas=DEFAULT_ALPHAS) -> np.ndarray:
    """Mean squared leave-one-out error, summed over outputs, per alpha."""
    X = np.asarray(x, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if Y.ndim == 1:
        Y = Y[:, None]
    Xc = X - X.mean(axis=0)
    Yc = Y - Y.mean(axis=0)
    dec = _Decomposition(Xc)
    return _loo_errors(dec, Yc, alphas, X.shape[0])


def _loo_errors(dec: _Decomposition, Yc: np.ndarray, alphas, m: int) -> np.ndarray:
    errors = []
    for alpha in alphas:
        h = dec.hat_diag(alpha) + 1.0 / m
        resid = Yc - dec.fitted(Yc, alpha)
        loo = resid / (1.0 - h)[:, None]
        errors.append(float((loo ** 2).sum(axis=1).mean()))
    return np.array(errors)


def fit_ridge_cv(x, y, grid=DEFAULT_ALPHAS) -> RidgeModel:
    X = np.asarray(x, dtype=np.float64)
    labels = [str(v) for v in y]
    if X.ndim != 2 or X.shape[0] != len(labels):
        raise FitError(f"feature matrix shape {X.shape} does not match {len(labels)} labels")
    m = X.shape[0]
    if m < 3:
        raise FitError(f"ridge fit needs at least 3 samples, got {m}")
    if not np.all(np.isfinite(X)):
        raise FitError("feature matrix contains non-finite values")
    classes = tuple(sorted(set(labels)))
    if len(classes) < 2:
        raise FitError("ridge fit needs at least 2 classes")
    grid = tuple(float(a) for a in grid)
    if any(a <= 0 for a in grid) or list(grid) != sorted(grid):
        raise FitError("alpha grid must be positive and increasing")

    Y = encode_targets(labels, classes)
    x_mean = X.mean(axis=0)
    y_mean = Y.mean(axis=0)
    Xc = X - x_mean
    Yc = Y - y_mean
    dec = _Decomposition(Xc)
    errors = _loo_errors(dec, Yc, grid, m)
    best = int(np.argmin(errors))  # first minimum, i.e. the smaller alpha on ties
    alpha = grid[best]
    W = dec.weights(Yc, alpha).T
    intercepts = y_mean - x_mean @ W.T
    return RidgeModel(
        classes=classes,
        weights=W,
        intercepts=intercepts,
        alpha=alpha,
        feature_means=x_mean,
        alphas=grid,
        cv_errors=tuple(float(e) for e in errors),
    )


def _scores(model: RidgeModel, x: np.ndarray) -> np.ndarray:
    # Row-wise reductions instead of a BLAS product: each score depends only
    # on its own row, so batch size never changes the rounding.
    k, dim = model.weights.shape
    step = max(1, (1 << 22) // max(k * dim, 1))
    out = np.empty((x.shape[0], k))
    for start in range(0, x.shape[0], step):
        block = x[start:start + step]
        out[start:start + step] = (block[:, None, :] * model.weights[None, :, :]).sum(axis=2)
    return out + model.intercepts


def predict(model: RidgeModel, x) -> list:
    scores = model.decision_function(x)
    if len(model.classes) == 2:
        idx = (scores[:, 0] > 0).astype(int)
    else:
        idx = np.argmax(scores, axis=1)
    return [model.classes[i] for i in idx]
