"""Fixed-size word-count vectors."""

import numpy as np

from .errors import InvalidWindow
from .sfa import SfaModel, series_words

N_SLOTS = 256
COUNT_DTYPE = np.uint32


def bag_of_words(t_dilated, model: SfaModel) -> np.ndarray:
    """256-slot count vector of the words of all width-``w`` windows."""
    t = np.asarray(t_dilated, dtype=np.float64)
    if t.ndim != 1:
        raise InvalidWindow("bag_of_words expects a single series")
    return bags_of_words(t[None, :], model)[0]


def bags_of_words(X, model: SfaModel) -> np.ndarray:
    """Row-wise :func:`bag_of_words` for an ``(m, n)`` matrix."""
    X = np.asarray(X, dtype=np.float64)
    if X.shape[-1] < model.config.window_length:
        raise InvalidWindow(
            f"series of length {X.shape[-1]} shorter than window "
            f"{model.config.window_length}"
        )
    codes = series_words(X, model)
    m = codes.shape[0]
    flat = codes + (np.arange(m, dtype=np.int64) * N_SLOTS)[:, None]
    counts = np.bincount(flat.ravel(), minlength=m * N_SLOTS)
    return counts.reshape(m, N_SLOTS).astype(COUNT_DTYPE)
