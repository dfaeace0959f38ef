"""Dataset files, model persistence, prediction and report CSVs."""

from __future__ import annotations

import csv
import io as _io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from .classifier import Weasel2Classifier
from .core import LabeledDataset
from .ensemble import ConfigDraw, EnsembleParams, FittedTransform
from .errors import FormatError, IoError, ParseError, SchemaError, VersionError
from .ridge import RidgeModel
from .sfa import SfaModel

FORMAT_NAME = "weasel2-model"
FORMAT_VERSION = 1

REPORT_COLUMNS = (
    "name",
    "m_train",
    "m_test",
    "n",
    "r_max",
    "feature_dim",
    "train_seconds",
    "predict_seconds",
    "accuracy",
    "memory_estimate_bytes",
)


# ---------------------------------------------------------------- datasets


def load_ucr_tsv(path, delimiter: str = "\t") -> LabeledDataset:
    """Read a label-first delimited file (UCR archive layout)."""
    path = Path(path)
    series, labels = [], []
    width = None
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            fields = line.split(delimiter)
            if len(fields) < 2:
                raise FormatError("expected a label followed by at least one value", lineno)
            label = fields[0].strip()
            if not label:
                raise FormatError("empty class label", lineno)
            try:
                values = [float(v) for v in fields[1:]]
            except ValueError as exc:
                raise FormatError(f"unparsable number ({exc})", lineno) from None
            if width is None:
                width = len(values)
            elif len(values) != width:
                raise FormatError(
                    f"series has {len(values)} values, expected {width}", lineno
                )
            series.append(values)
            labels.append(label)
    if not series:
        raise FormatError(f"{path} contains no series")
    return LabeledDataset(series, labels)


def write_ucr_tsv(dataset: LabeledDataset, path, delimiter: str = "\t") -> None:
    buf = _io.StringIO()
    for label, s in zip(dataset.labels, dataset.series):
        buf.write(delimiter.join([label] + [repr(float(v)) for v in s]))
        buf.write("\n")
    _atomic_write(path, buf.getvalue())


# ------------------------------------------------------------------ models


class _Record(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class ParamsRecord(_Record):
    w_min: int
    w_max: int
    r_max: int
    seed: int
    use_diff: bool
    scale_std: bool


class DrawRecord(_Record):
    w: int
    d: int
    l: int
    binning: Literal["equi-depth", "equi-width"]
    selected: List[List[int]]
    breakpoints: List[List[float]]


class RidgeRecord(_Record):
    classes: List[str]
    alpha: float
    alphas: List[float]
    weights: List[List[float]]
    intercepts: List[float]
    feature_means: List[float]


class ModelFile(_Record):
    format: Literal["weasel2-model"]
    format_version: int
    n_train: int
    params: ParamsRecord
    draws: List[DrawRecord]
    ridge: RidgeRecord


def _floats(a) -> list:
    return [float(v) for v in np.asarray(a).reshape(-1)]


def model_to_document(clf: Weasel2Classifier) -> dict:
    if not clf.is_fitted:
        raise ValueError("only fitted classifiers can be saved")
    ft, rm = clf.transform_, clf.ridge_
    p = ft.params
    draws = []
    for r, draw in enumerate(ft.draws):
        models = ft.models(r)
        draws.append(
            DrawRecord(
                w=draw.w,
                d=draw.d,
                l=draw.l,
                binning=draw.binning,
                selected=[list(mdl.selected) for mdl in models],
                breakpoints=[_floats(mdl.breakpoints) for mdl in models],
            )
        )
    doc = ModelFile(
        format=FORMAT_NAME,
        format_version=FORMAT_VERSION,
        n_train=ft.n_train,
        params=ParamsRecord(
            w_min=p.w_min, w_max=p.w_max, r_max=p.r_max, seed=p.seed,
            use_diff=p.use_diff, scale_std=p.scale_std,
        ),
        draws=draws,
        ridge=RidgeRecord(
            classes=list(rm.classes),
            alpha=float(rm.alpha),
            alphas=_floats(rm.alphas),
            weights=[_floats(row) for row in rm.weights],
            intercepts=_floats(rm.intercepts),
            feature_means=_floats(rm.feature_means),
        ),
    )
    return doc.model_dump()


def dumps_model(clf: Weasel2Classifier) -> str:
    # sort_keys + repr floats make the text canonical and lossless
    return json.dumps(model_to_document(clf), sort_keys=True, indent=1) + "\n"


def save_model(clf: Weasel2Classifier, path) -> None:
    _atomic_write(path, dumps_model(clf))


def loads_model(text: str) -> Weasel2Classifier:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file is not valid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise SchemaError("model file must hold a JSON object")
    if raw.get("format") != FORMAT_NAME:
        raise SchemaError(f"not a {FORMAT_NAME} file")
    version = raw.get("format_version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise SchemaError("format_version missing or not an integer")
    if version != FORMAT_VERSION:
        raise VersionError(
            f"model format version {version} is not supported "
            f"(this build reads version {FORMAT_VERSION})"
        )
    try:
        doc = ModelFile.model_validate(raw)
    except ValidationError as exc:
        raise SchemaError(f"invalid model file: {exc}") from None
    try:
        return _build_classifier(doc)
    except (ValueError, IndexError) as exc:
        raise SchemaError(f"inconsistent model file: {exc}") from None


def load_model(path) -> Weasel2Classifier:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"model file is not UTF-8 text ({exc})") from None
    return loads_model(text)


def _build_classifier(doc: ModelFile) -> Weasel2Classifier:
    p = doc.params
    params = EnsembleParams(
        w_min=p.w_min, w_max=p.w_max, r_max=p.r_max, seed=p.seed,
        use_diff=p.use_diff, scale_std=p.scale_std,
    )
    params.check()
    if len(doc.draws) != p.r_max:
        raise ValueError(f"{len(doc.draws)} draws recorded, r_max={p.r_max}")
    draws, raw_models, diff_models = [], [], []
    for rec in doc.draws:
        draw = ConfigDraw(rec.w, rec.d, rec.l, rec.binning)
        cfg = draw.sfa_config(p.scale_std)
        if len(rec.selected) != params.channels or len(rec.breakpoints) != params.channels:
            raise ValueError("per-channel SFA records do not match use_diff")
        models = [
            SfaModel(cfg, tuple(sel), tuple(bp))
            for sel, bp in zip(rec.selected, rec.breakpoints)
        ]
        for mdl in models:
            if any(not 0 <= i < 2 * (rec.w // 2 + 1) for i in mdl.selected):
                raise ValueError("selected component index out of range")
        draws.append(draw)
        raw_models.append(models[0])
        if params.use_diff:
            diff_models.append(models[1])
    ft = FittedTransform(
        params=params,
        draws=tuple(draws),
        models_raw=tuple(raw_models),
        models_diff=tuple(diff_models),
        n_train=doc.n_train,
    )
    rr = doc.ridge
    weights = np.array(rr.weights, dtype=np.float64)
    outputs = 1 if len(rr.classes) == 2 else len(rr.classes)
    if weights.shape != (outputs, ft.feature_dim):
        raise ValueError(f"weights shape {weights.shape}, expected {(outputs, ft.feature_dim)}")
    if len(rr.intercepts) != outputs or len(rr.feature_means) != ft.feature_dim:
        raise ValueError("intercepts or feature means have the wrong length")
    ridge = RidgeModel(
        classes=tuple(rr.classes),
        weights=weights,
        intercepts=np.array(rr.intercepts, dtype=np.float64),
        alpha=rr.alpha,
        feature_means=np.array(rr.feature_means, dtype=np.float64),
        alphas=tuple(rr.alphas),
    )
    clf = Weasel2Classifier(params=params, alphas=ridge.alphas)
    clf.transform_, clf.ridge_ = ft, ridge
    return clf


# ----------------------------------------------------------------- outputs


def predictions_csv(predicted: Iterable[str], true: Optional[Iterable[str]] = None) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    predicted = list(predicted)
    if true is None:
        writer.writerow(["index", "predicted"])
        writer.writerows([i, p] for i, p in enumerate(predicted))
    else:
        true = list(true)
        if len(true) != len(predicted):
            raise ValueError("predicted and true labels differ in length")
        writer.writerow(["index", "predicted", "true"])
        writer.writerows([i, p, t] for i, (p, t) in enumerate(zip(predicted, true)))
    return buf.getvalue()


def write_predictions(path, predicted, true=None) -> None:
    _atomic_write(path, predictions_csv(predicted, true))


def read_predictions(path) -> list:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _render(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def report_csv(rows: Iterable[dict]) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_COLUMNS)
    for row in rows:
        missing = set(REPORT_COLUMNS) - set(row)
        if missing:
            raise ValueError(f"report row lacks {sorted(missing)}")
        writer.writerow([_render(row[c]) for c in REPORT_COLUMNS])
    return buf.getvalue()


def write_report(rows: Iterable[dict], path) -> None:
    _atomic_write(path, report_csv(rows))


def append_report_row(row: dict, path) -> None:
    """Append one row, creating the file with its header when absent."""
    path = Path(path)
    if path.exists() and path.stat().st_size > 0:
        text = report_csv([row]).split("\n", 1)[1]
        try:
            with open(path, "a", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(f"cannot append to {path}: {exc}") from exc
    else:
        write_report([row], path)


def read_report(path) -> list:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    try:
        fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise IoError(f"cannot write {path}: {exc}") from exc
