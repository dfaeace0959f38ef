"""Dilation by reordering.

Concatenating the ``d`` strided strands ``T[0::d], T[1::d], ...`` turns
every dilated window of ``T`` into an ordinary contiguous window of the
reordered series, so the sliding-window code downstream stays unchanged.
"""

import math

import numpy as np

from .errors import InvalidDilation, InvalidWindow


def dilation_order(n: int, d: int) -> np.ndarray:
    """Index permutation that realises :func:`apply_dilation` for length ``n``."""
    if d < 1 or d > n:
        raise InvalidDilation(f"dilation {d} outside [1, {n}]")
    return np.concatenate([np.arange(i, n, d) for i in range(d)])


def apply_dilation(t, d: int) -> np.ndarray:
    """Reorder ``t`` (or each row of a 2-D array) for dilation rate ``d``.

    >>> apply_dilation([1, 2, 3, 4, 5, 6, 7, 8], 2).tolist()
    [1.0, 3.0, 5.0, 7.0, 2.0, 4.0, 6.0, 8.0]
    """
    t = np.asarray(t, dtype=np.float64)
    return t[..., dilation_order(t.shape[-1], int(d))]


def max_dilation(n: int, w: int) -> int:
    """Largest ``d`` with ``(w - 1) * d + 1 <= n``."""
    if w < 2 or w > n:
        raise InvalidWindow(f"window length {w} outside [2, {n}]")
    return (n - 1) // (w - 1)


def sample_dilation(rng: np.random.Generator, n: int, w: int) -> int:
    """Draw ``floor(2**x)`` with ``x ~ U[0, log2((n - 1) / (w - 1))]``.

    Small dilations are favoured: each doubling of ``d`` is equally likely.
    """
    upper = max_dilation(n, w)
    x = rng.uniform(0.0, math.log2((n - 1) / (w - 1)))
    return max(1, min(int(math.floor(2.0 ** x)), upper))
