"""Error-versus-rank and runtime-versus-rank sweeps, written as CSV.

For every target rank ``k_hat`` and every requested method the sweep

1. slices the singular vectors the method needs from one SVD computed up
   front (so no SVD time ever lands inside a timed region),
2. times the row plus column selection, keeping the median of ``repeats``,
3. builds the CUR factors and records ``||A - CMR||_2 / ||A||_2``,
4. optionally evaluates the two-sided error bound.

Run ``python -m ldeim --help`` for the command-line interface.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .cur import bound_diagnostic, build_cur
from .linalg import spectral_norm, truncated_svd
from .matrix_io import PREPROCESS_ALIASES, Preprocess, SyntheticSpec, load_matrix, preprocess, synthesize
from .selection import METHODS, select

log = logging.getLogger(__name__)

CSV_HEADER = ("method", "k_hat", "svd_rank_used", "rel_error", "selection_seconds", "bound_value")
DEFAULT_MAX_RANK = 50


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep.

    ``input`` is a file path or a :class:`SyntheticSpec`.  ``ranks`` is
    ``(min, max, step)``; ``None`` means ``1..min(50, m, n)``.
    ``svd_rank_rule`` is ``"half"`` (``k = ceil(k_hat / 2)``) or a fixed
    integer ``k`` used by L-DEIM at every point.
    """

    input: str | Path | SyntheticSpec
    format: str | None = None
    preprocess: Preprocess = Preprocess.NONE
    methods: tuple[str, ...] = METHODS
    ranks: tuple[int, int, int] | None = None
    svd_rank_rule: str | int = "half"
    leverage_rank: int = 2
    repeats: int = 5
    seed: int = 0
    bound: bool = False


@dataclass(frozen=True)
class ResultRow:
    method: str
    k_hat: int
    svd_rank_used: int
    rel_error: float
    selection_seconds: float
    bound_value: float | None = None
    error: str | None = field(default=None, compare=False)


def ldeim_rank(rule: str | int, k_hat: int) -> int:
    if rule == "half":
        return math.ceil(k_hat / 2)
    return int(rule)


def svd_rank_for(method: str, k_hat: int, cfg: ExperimentConfig) -> int:
    """Number of singular vectors ``method`` is given at target rank ``k_hat``."""
    if method == "ldeim":
        return ldeim_rank(cfg.svd_rank_rule, k_hat)
    if method == "leverage":
        return cfg.leverage_rank
    return k_hat


def load_input(cfg: ExperimentConfig) -> np.ndarray:
    if isinstance(cfg.input, SyntheticSpec):
        a = synthesize(cfg.input)
    else:
        a = load_matrix(cfg.input, cfg.format)
    return preprocess(a, cfg.preprocess)


def sweep_ranks(cfg: ExperimentConfig, shape: tuple[int, int]) -> list[int]:
    top = min(shape)
    lo, hi, step = cfg.ranks if cfg.ranks is not None else (1, min(DEFAULT_MAX_RANK, top), 1)
    if step < 1 or not 1 <= lo <= hi:
        raise ValueError(f"invalid rank range {lo}:{hi}:{step}")
    if hi > top:
        raise ValueError(f"rank_max {hi} exceeds min(m, n) = {top}")
    return list(range(lo, hi + 1, step))


def validate(cfg: ExperimentConfig, ranks: list[int], shape: tuple[int, int]) -> None:
    unknown = set(cfg.methods) - set(METHODS)
    if unknown or not cfg.methods:
        raise ValueError(f"methods must be a non-empty subset of {METHODS}, got {cfg.methods}")
    if cfg.repeats < 1:
        raise ValueError("repeats must be >= 1")
    if "leverage" in cfg.methods and not 1 <= cfg.leverage_rank <= min(shape):
        raise ValueError(f"leverage_rank must be in [1, {min(shape)}]")
    if "ldeim" in cfg.methods:
        if cfg.svd_rank_rule != "half" and not isinstance(cfg.svd_rank_rule, int):
            raise ValueError(f"svd_rank_rule must be 'half' or an integer, got {cfg.svd_rank_rule!r}")
        for k_hat in ranks:
            k = ldeim_rank(cfg.svd_rank_rule, k_hat)
            if not 1 <= k <= k_hat:
                raise ValueError(f"L-DEIM needs 1 <= k <= k_hat, got k={k} at k_hat={k_hat}")


def _timed_selection(method: str, u: np.ndarray, v: np.ndarray, k_hat: int, repeats: int):
    times = []
    for _ in range(repeats):
        rows = select(method, u, k_hat)
        cols = select(method, v, k_hat)
        times.append(rows.selection_seconds + cols.selection_seconds)
    return rows.indices, cols.indices, statistics.median(times)


def run_experiment(cfg: ExperimentConfig, matrix: np.ndarray | None = None) -> list[ResultRow]:
    """Run the sweep described by ``cfg``.

    ``matrix`` overrides ``cfg.input`` (it is still preprocessed).  A failure
    at one (method, rank) point yields a row with NaN error and the message
    in ``ResultRow.error``; the rest of the sweep continues.
    """
    a = load_input(cfg) if matrix is None else preprocess(matrix, cfg.preprocess)
    ranks = sweep_ranks(cfg, a.shape)
    validate(cfg, ranks, a.shape)

    need = max(svd_rank_for(meth, k_hat, cfg) for meth in cfg.methods for k_hat in ranks)
    full = truncated_svd(a, min(min(a.shape), need + 1))
    a_norm = spectral_norm(a)
    if a_norm == 0:
        raise ValueError("input matrix is zero")

    results = []
    for method in sorted(set(cfg.methods), key=METHODS.index):
        for k_hat in ranks:
            k = svd_rank_for(method, k_hat, cfg)
            try:
                svd = full.truncate(k)
                row_idx, col_idx, secs = _timed_selection(method, svd.u, svd.v, k_hat, cfg.repeats)
                f = build_cur(a, col_idx, row_idx)
                resid = spectral_norm(a - f.reconstruct())
                bound = None
                if cfg.bound and k <= k_hat:
                    s_next = float(full.sigma[k]) if k < full.rank else 0.0
                    bound = bound_diagnostic(a, svd, f, s_next, observed_error=resid).bound_value
                results.append(ResultRow(method, k_hat, k, resid / a_norm, secs, bound))
            except (ValueError, ArithmeticError, RuntimeError) as exc:
                log.warning("%s at k_hat=%d failed: %s", method, k_hat, exc)
                results.append(ResultRow(method, k_hat, k, math.nan, math.nan, None, error=str(exc)))
    return results


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.17g}"


def emit_csv(rows: list[ResultRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in rows:
            w.writerow([
                r.method, r.k_hat, r.svd_rank_used,
                _fmt(r.rel_error), _fmt(r.selection_seconds), _fmt(r.bound_value),
            ])


def read_csv(path) -> list[ResultRow]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        return [
            ResultRow(
                rec[0], int(rec[1]), int(rec[2]), float(rec[3]), float(rec[4]),
                float(rec[5]) if rec[5] else None,
            )
            for rec in reader
        ]


# --- command line -----------------------------------------------------------


def _parse_synthetic(text: str) -> tuple[int, int, int, float]:
    try:
        shape, rank, noise = text.split(":")
        rows, cols = shape.lower().split("x")
        return int(rows), int(cols), int(rank), float(noise)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC:rank:noise, got {text!r}") from None


def _parse_ranks(text: str) -> tuple[int, int, int]:
    try:
        lo, hi, step = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected min:max:step, got {text!r}") from None
    return lo, hi, step


def _parse_rule(text: str) -> str | int:
    if text == "half":
        return "half"
    if text.startswith("fixed="):
        try:
            return int(text[len("fixed="):])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"expected 'half' or 'fixed=<k>', got {text!r}")


def _parse_methods(text: str) -> tuple[str, ...]:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    bad = [m for m in methods if m not in METHODS]
    if bad or not methods:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {','.join(METHODS)}")
    return methods


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ldeim-bench",
        description="Sweep CUR target ranks with DEIM, L-DEIM, Q-DEIM and leverage-score "
        "selection; write relative errors and selection times as CSV.",
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="matrix file (Matrix Market or CSV)")
    src.add_argument("--synthetic", metavar="RxC:rank:noise", type=_parse_synthetic,
                     help="generate X @ Y.T + noise*N with Gaussian X, Y, N (seeded by --seed)")
    p.add_argument("--format", choices=("mtx", "csv"),
                   help="input format; default from the file extension (.csv, else mtx)")
    p.add_argument("--preprocess", choices=("none", "row-unit", "row-center", "col-center"),
                   default="none", help="scale rows to unit norm or subtract row/column means")
    p.add_argument("--methods", type=_parse_methods, default=METHODS,
                   help="comma list from deim,ldeim,qdeim,leverage (default: all)")
    p.add_argument("--ranks", type=_parse_ranks, metavar="MIN:MAX:STEP",
                   help="target ranks k_hat (default 1:min(50,m,n):1)")
    p.add_argument("--svd-rank-rule", type=_parse_rule, default="half", metavar="{half,fixed=K}",
                   help="singular vectors for L-DEIM: ceil(k_hat/2) or a fixed K (default half)")
    p.add_argument("--leverage-rank", type=int, default=2, metavar="K",
                   help="singular vectors for leverage scores (default 2)")
    p.add_argument("--repeats", type=int, default=5, metavar="N",
                   help="timing repeats; the median is reported (default 5)")
    p.add_argument("--seed", type=int, default=0, help="seed for --synthetic (default 0)")
    p.add_argument("--bound", action="store_true", help="fill the bound_value column")
    p.add_argument("--out", required=True, metavar="PATH", help="CSV file to write")
    return p


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    if args.synthetic is not None:
        rows, cols, rank, noise = args.synthetic
        source = SyntheticSpec(rows, cols, rank, noise, args.seed)
    else:
        source = args.input
    return ExperimentConfig(
        input=source,
        format=args.format,
        preprocess=PREPROCESS_ALIASES[args.preprocess],
        methods=args.methods,
        ranks=args.ranks,
        svd_rank_rule=args.svd_rank_rule,
        leverage_rank=args.leverage_rank,
        repeats=args.repeats,
        seed=args.seed,
        bound=args.bound,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(args)
        rows = run_experiment(cfg)
        emit_csv(rows, args.out)
    except (OSError, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"ldeim-bench: error: {exc}", file=sys.stderr)
        return 1
    return 0
