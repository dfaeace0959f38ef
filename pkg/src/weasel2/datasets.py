"""Synthetic benchmark data."""

import numpy as np

from .core import LabeledDataset


def make_sinusoids(
    m_train: int = 40,
    m_test: int = 40,
    length: int = 128,
    periods=(32, 16),
    noise: float = 0.2,
    seed: int = 0,
):
    """Noisy sinusoids with random phase, one class per period.

    Classes alternate so both splits are balanced. Labels are the class
    index as a string. Returns ``(train, test)``.
    """
    rng = np.random.default_rng(seed)
    t = np.arange(length)

    def split(m):
        labels = [i % len(periods) for i in range(m)]
        phase = rng.uniform(0.0, 2.0 * np.pi, size=m)
        period = np.array([periods[k] for k in labels], dtype=float)
        X = np.sin(2.0 * np.pi * t[None, :] / period[:, None] + phase[:, None])
        X += rng.normal(0.0, noise, size=X.shape)
        return LabeledDataset.from_array(X, [str(k) for k in labels])

    train = split(m_train)
    return train, split(m_test)
