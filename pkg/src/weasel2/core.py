"""Series and dataset containers plus ingestion-time validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegenerateSeries, ShapeMismatch


def as_series(values) -> np.ndarray:
    """Copy ``values`` into a read-only 1-D float64 array."""
    arr = np.array(values, dtype=np.float64).reshape(-1)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class LabeledDataset:
    """``m`` univariate series with one string label each.

    Series are kept individually so that ragged input can still be
    constructed and reported on by :func:`validate_dataset`. Use
    :attr:`X` for the stacked ``(m, n)`` matrix.
    """

    series: tuple
    labels: tuple = ()

    def __init__(self, series: Sequence, labels: Sequence[str] | None = None):
        series = tuple(as_series(s) for s in series)
        labels = tuple(str(lab) for lab in labels) if labels is not None else ()
        if labels and len(labels) != len(series):
            raise ShapeMismatch(
                f"{len(series)} series but {len(labels)} labels"
            )
        object.__setattr__(self, "series", series)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_array(cls, X, labels=None) -> "LabeledDataset":
        X = np.asarray(X, dtype=np.float64)
        if X.ndim == 1:
            X = X[None, :]
        return cls(list(X), labels)

    def __len__(self) -> int:
        return len(self.series)

    @property
    def m(self) -> int:
        return len(self.series)

    @property
    def n(self) -> int:
        lengths = {len(s) for s in self.series}
        if len(lengths) != 1:
            raise ShapeMismatch(f"series have unequal lengths {sorted(lengths)}")
        return lengths.pop()

    @property
    def X(self) -> np.ndarray:
        self.n  # raises on ragged input
        X = np.vstack(self.series) if self.series else np.empty((0, 0))
        X.setflags(write=False)
        return X

    @property
    def has_labels(self) -> bool:
        return len(self.labels) == len(self.series) and len(self.series) > 0


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_dataset(d: LabeledDataset, for_fit: bool = True) -> ValidationReport:
    """Check the equal-length, finiteness and class-count invariants.

    Never raises for data problems; every violation is listed in the
    returned report. ``for_fit=False`` skips the label checks, which only
    matter when training.
    """
    problems = []
    if for_fit and d.m < 2:
        problems.append(f"m<2: dataset has {d.m} series")
    lengths = [len(s) for s in d.series]
    if len(set(lengths)) > 1:
        problems.append(f"unequal lengths: {sorted(set(lengths))}")
    if any(n < 1 for n in lengths):
        problems.append("empty series")
    for i, s in enumerate(d.series):
        bad = np.flatnonzero(~np.isfinite(s))
        if bad.size:
            problems.append(f"non-finite value at (series {i}, index {int(bad[0])})")
    if for_fit:
        if len(d.labels) != d.m:
            problems.append("missing labels")
        else:
            if any(lab == "" for lab in d.labels):
                problems.append("empty label")
            if len(set(d.labels)) < 2:
                problems.append(f"<2 classes: found {len(set(d.labels))}")
    return ValidationReport(tuple(problems))


def first_order_diff(t) -> np.ndarray:
    """Consecutive differences ``t[i+1] - t[i]``; works row-wise on 2-D input."""
    t = np.asarray(t, dtype=np.float64)
    if t.shape[-1] < 2:
        raise DegenerateSeries(f"need at least 2 values, got {t.shape[-1]}")
    return np.diff(t, axis=-1)
