"""Command-line entry point: fit, predict, evaluate, benchmark."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .classifier import Weasel2Classifier
from .datasets import make_sinusoids
from .ensemble import EnsembleParams, memory_estimate
from .errors import Weasel2Error

log = logging.getLogger("weasel2")


def _auto_int(text: str):
    if text == "auto":
        return None
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'auto' or an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _ensemble_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rmax", type=_auto_int, default=None, metavar="{auto|INT}",
                   help="ensemble size (default: auto rule on m and n)")
    p.add_argument("--wmin", type=int, default=4, metavar="INT")
    p.add_argument("--wmax", type=_auto_int, default=None, metavar="{auto|INT}",
                   help="maximal window length (default: auto from n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-diff", action="store_true",
                   help="skip the first-order difference channel")


def _common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--quiet", action="store_true")
    p.add_argument("--csv", action="store_true",
                   help="read comma-separated instead of tab-separated files")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weasel2",
        description="Random dilated dictionary time series classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit", help="train a model")
    p.add_argument("--train", required=True, type=Path)
    p.add_argument("--model-out", required=True, type=Path)
    _ensemble_options(p)
    _common_options(p)

    p = sub.add_parser("predict", help="label a test file with a saved model")
    p.add_argument("--model", required=True, type=Path)
    p.add_argument("--test", required=True, type=Path)
    p.add_argument("--out", required=True, type=Path, help="predictions CSV")
    _common_options(p)

    p = sub.add_parser("evaluate", help="fit on a train file, score a test file")
    p.add_argument("--train", required=True, type=Path)
    p.add_argument("--test", required=True, type=Path)
    p.add_argument("--model-out", type=Path)
    p.add_argument("--predictions-out", type=Path)
    p.add_argument("--out", type=Path, help="report CSV to append a row to")
    _ensemble_options(p)
    _common_options(p)

    p = sub.add_parser("benchmark", help="evaluate every dataset of a UCR-style archive")
    p.add_argument("--archive", required=True, type=Path,
                   help="directory holding <Name>/<Name>_TRAIN.tsv and _TEST.tsv")
    p.add_argument("--out", required=True, type=Path, help="report CSV")
    p.add_argument("--datasets", nargs="*", help="restrict to these dataset names")
    _ensemble_options(p)
    _common_options(p)

    p = sub.add_parser("make-synthetic", help="write the synthetic sinusoid train/test pair")
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quiet", action="store_true")
    return parser


def _params(args) -> EnsembleParams:
    params = EnsembleParams(
        w_min=args.wmin,
        w_max=args.wmax,
        r_max=args.rmax,
        seed=args.seed,
        use_diff=not args.no_diff,
    )
    params.check()
    return params


def _load(path: Path, args):
    return io.load_ucr_tsv(path, delimiter="," if getattr(args, "csv", False) else "\t")


def _evaluate(train, test, args, name: str):
    clf = Weasel2Classifier(_params(args), threads=args.threads)
    t0 = time.perf_counter()
    clf.fit(train)
    train_seconds = time.perf_counter() - t0
    t0 = time.perf_counter()
    predicted = clf.predict(test)
    predict_seconds = time.perf_counter() - t0
    accuracy = float(np.mean([p == t for p, t in zip(predicted, test.labels)]))
    p = clf.transform_.params
    row = {
        "name": name,
        "m_train": train.m,
        "m_test": test.m,
        "n": train.n,
        "r_max": p.r_max,
        "feature_dim": clf.feature_dim,
        "train_seconds": train_seconds,
        "predict_seconds": predict_seconds,
        "accuracy": accuracy,
        "memory_estimate_bytes": memory_estimate(train.m, p.r_max, p.use_diff),
    }
    return clf, predicted, row


def cmd_fit(args) -> int:
    train = _load(args.train, args)
    clf = Weasel2Classifier(_params(args), threads=args.threads)
    t0 = time.perf_counter()
    clf.fit(train)
    seconds = time.perf_counter() - t0
    io.save_model(clf, args.model_out)
    print(f"feature_dim={clf.feature_dim} r_max={clf.transform_.params.r_max} "
          f"train_seconds={seconds:.3f}")
    return 0


def cmd_predict(args) -> int:
    clf = io.load_model(args.model)
    clf.threads = args.threads
    test = _load(args.test, args)
    predicted = clf.predict(test)
    io.write_predictions(args.out, predicted, test.labels)
    accuracy = float(np.mean([p == t for p, t in zip(predicted, test.labels)]))
    print(f"predicted={len(predicted)} accuracy={accuracy!r}")
    return 0


def cmd_evaluate(args) -> int:
    train = _load(args.train, args)
    test = _load(args.test, args)
    name = args.train.stem.removesuffix("_TRAIN")
    clf, predicted, row = _evaluate(train, test, args, name)
    if args.model_out:
        io.save_model(clf, args.model_out)
    if args.predictions_out:
        io.write_predictions(args.predictions_out, predicted, test.labels)
    if args.out:
        io.append_report_row(row, args.out)
    print(f"accuracy={row['accuracy']!r} feature_dim={row['feature_dim']} "
          f"r_max={row['r_max']} train_seconds={row['train_seconds']:.3f}")
    return 0


def find_ucr_pairs(archive: Path, names=None) -> list:
    """``(name, train_path, test_path)`` for each complete dataset, sorted by name."""
    pairs = []
    for folder in sorted(p for p in archive.iterdir() if p.is_dir()):
        name = folder.name
        if names and name not in names:
            continue
        train = folder / f"{name}_TRAIN.tsv"
        test = folder / f"{name}_TEST.tsv"
        if train.is_file() and test.is_file():
            pairs.append((name, train, test))
    return pairs


def cmd_benchmark(args) -> int:
    if not args.archive.is_dir():
        raise FileNotFoundError(f"archive directory {args.archive} not found")
    pairs = find_ucr_pairs(args.archive, set(args.datasets or ()))
    rows = []
    for name, train_path, test_path in pairs:
        log.info("dataset %s", name)
        _, _, row = _evaluate(_load(train_path, args), _load(test_path, args), args, name)
        log.info("%s accuracy=%.4f", name, row["accuracy"])
        rows.append(row)
    io.write_report(rows, args.out)
    print(f"datasets={len(rows)} report={args.out}")
    return 0


def cmd_make_synthetic(args) -> int:
    train, test = make_sinusoids(seed=args.seed)
    folder = args.out_dir / "Sinusoids"
    folder.mkdir(parents=True, exist_ok=True)
    io.write_ucr_tsv(train, folder / "Sinusoids_TRAIN.tsv")
    io.write_ucr_tsv(test, folder / "Sinusoids_TEST.tsv")
    print(f"wrote {folder}")
    return 0


COMMANDS = {
    "fit": cmd_fit,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "benchmark": cmd_benchmark,
    "make-synthetic": cmd_make_synthetic,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        return COMMANDS[args.command](args)
    except (Weasel2Error, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
