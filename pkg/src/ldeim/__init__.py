"""CUR decompositions driven by DEIM-family index selection.

The main entry points are the selectors in :mod:`ldeim.selection`
(``deim_select``, ``ldeim_select``, ``qdeim_select``, ``leverage_select``),
:func:`build_cur` for the factors and :func:`run_experiment` for rank sweeps.
"""

from .bench import ExperimentConfig, ResultRow, emit_csv, read_csv, run_experiment
from .cur import BoundReport, CurFactors, bound_diagnostic, build_cur, cur_decompose, cur_indices, relative_error
from .exceptions import ConvergenceError, MatrixFormatError, RankDeficientError, SingularMatrixError
from .linalg import (
    PivotedQr,
    TruncatedSvd,
    least_squares,
    pivoted_qr_select,
    sigma_min,
    solve_small,
    spectral_norm,
    truncated_svd,
)
from .matrix_io import Preprocess, SyntheticSpec, load_matrix, preprocess, synthesize, write_matrix
from .selection import (
    METHODS,
    SelectionReport,
    deim_select,
    ldeim_select,
    leverage_scores,
    leverage_select,
    qdeim_select,
    select,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ConvergenceError", "CurFactors", "ExperimentConfig", "METHODS",
    "MatrixFormatError", "PivotedQr", "Preprocess", "RankDeficientError", "ResultRow",
    "SelectionReport", "SingularMatrixError", "SyntheticSpec", "TruncatedSvd",
    "bound_diagnostic", "build_cur", "cur_decompose", "cur_indices", "deim_select",
    "emit_csv", "ldeim_select", "least_squares", "leverage_scores", "leverage_select",
    "load_matrix", "pivoted_qr_select", "preprocess", "qdeim_select", "read_csv",
    "relative_error", "run_experiment", "select", "sigma_min", "solve_small",
    "spectral_norm", "synthesize", "truncated_svd", "write_matrix",
]
