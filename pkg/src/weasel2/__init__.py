"""Random dilated dictionary transform and ridge classifier for time series."""

from .classifier import Weasel2Classifier
from .core import LabeledDataset, ValidationReport, first_order_diff, validate_dataset
from .dilation import apply_dilation, max_dilation, sample_dilation
from .ensemble import (
    ConfigDraw,
    EnsembleParams,
    FittedTransform,
    default_rmax,
    default_wmax,
    draw_configs,
    fit,
    memory_estimate,
    transform,
)
from .ridge import DEFAULT_ALPHAS, RidgeModel, fit_ridge_cv, predict

__version__ = "0.1.0"

__all__ = [
    "ConfigDraw",
    "DEFAULT_ALPHAS",
    "EnsembleParams",
    "FittedTransform",
    "LabeledDataset",
    "RidgeModel",
    "ValidationReport",
    "Weasel2Classifier",
    "apply_dilation",
    "default_rmax",
    "default_wmax",
    "draw_configs",
    "first_order_diff",
    "fit",
    "fit_ridge_cv",
    "max_dilation",
    "memory_estimate",
    "predict",
    "sample_dilation",
    "transform",
    "validate_dataset",
]
