from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from .core import LabeledDataset, validate_dataset
from .ensemble import EnsembleParams, FittedTransform, fit as fit_transform
from .errors import FitError
from .ridge import DEFAULT_ALPHAS, RidgeModel, fit_ridge_cv

log = logging.getLogger(__name__)


class Weasel2Classifier:
    """Random dilated dictionary transform followed by a LOO-tuned ridge.

    Parameters
    ----------
    params : EnsembleParams, optional
        Window range, ensemble size, seed and difference channel. ``None``
        fields are resolved from the training data at fit time.
    alphas : sequence of float
        Regularisation grid searched by leave-one-out error.
    threads : int
        Worker threads for the transform. Results do not depend on it.
    """

    def __init__(
        self,
        params: Optional[EnsembleParams] = None,
        alphas=DEFAULT_ALPHAS,
        threads: int = 1,
    ):
        self.params = params if params is not None else EnsembleParams()
        self.alphas = tuple(alphas)
        self.threads = threads
        self.transform_: Optional[FittedTransform] = None
        self.ridge_: Optional[RidgeModel] = None

    @property
    def is_fitted(self) -> bool:
        return self.transform_ is not None and self.ridge_ is not None

    @property
    def feature_dim(self) -> int:
        return self.transform_.feature_dim

    def fit(self, dataset: LabeledDataset, labels=None) -> "Weasel2Classifier":
        if not isinstance(dataset, LabeledDataset):
            dataset = LabeledDataset.from_array(dataset, labels)
        report = validate_dataset(dataset)
        if not report.ok:
            raise FitError("; ".join(report.violations))
        self.transform_, features = fit_transform(dataset, self.params, threads=self.threads)
        log.info(
            "transform: %d draws, feature_dim=%d",
            len(self.transform_.draws), self.transform_.feature_dim,
        )
        self.ridge_ = fit_ridge_cv(features, dataset.labels, self.alphas)
        log.info("ridge: alpha=%g", self.ridge_.alpha)
        return self

    def transform(self, X) -> np.ndarray:
        self._check_fitted()
        return self.transform_.transform(X, threads=self.threads)

    def decision_function(self, X) -> np.ndarray:
        return self.ridge_.decision_function(self.transform(X))

    def predict(self, X) -> list:
        self._check_fitted()
        return self.ridge_.predict(self.transform(X))

    def score(self, dataset: LabeledDataset) -> float:
        predicted = self.predict(dataset)
        return float(np.mean([p == t for p, t in zip(predicted, dataset.labels)]))

    def _check_fitted(self):
        if not self.is_fitted:
            raise FitError("classifier is not fitted")
