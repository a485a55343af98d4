"""CUR factors, the optimal middle matrix and error diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import RankDeficientError
from .linalg import COND_LIMIT, TruncatedSvd, as_matrix, least_squares, sigma_min, spectral_norm, truncated_svd
from .selection import METHODS, select

#: Relative slack before an observed error counts as exceeding the bound.
BOUND_SLACK = 1e-8


@dataclass(frozen=True)
class CurFactors:
    """``a ~ c @ m_mid @ r`` with ``c = a[:, col_idx]`` and ``r = a[row_idx, :]``."""

    c: np.ndarray
    m_mid: np.ndarray
    r: np.ndarray
    col_idx: np.ndarray
    row_idx: np.ndarray

    @property
    def rank(self) -> int:
        return self.m_mid.shape[0]

    def reconstruct(self) -> np.ndarray:
        return self.c @ self.m_mid @ self.r


@dataclass(frozen=True)
class BoundReport:
    sigma_min_vp: float
    sigma_min_su: float
    sigma_k_plus_1: float
    bound_value: float
    observed_error: float

    @property
    def violated(self) -> bool:
        return self.observed_error > self.bound_value * (1 + BOUND_SLACK)

    @property
    def ratio(self) -> float:
        """observed / bound; ``inf`` when the bound is zero and the error is not."""
        if self.bound_value > 0:
            return self.observed_error / self.bound_value
        return 0.0 if self.observed_error == 0 else math.inf


def _index_list(idx, dim: int, name: str) -> np.ndarray:
    arr = np.asarray(idx)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError(f"{name} must be a non-empty 1-D index list")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError(f"{name} must hold integers, got dtype {arr.dtype}")
    if arr.min() < 0 or arr.max() >= dim:
        raise ValueError(f"{name} has entries outside [0, {dim})")
    if np.unique(arr).size != arr.size:
        raise ValueError(f"{name} has repeated entries")
    return arr.astype(np.intp)


def build_cur(a, col_idx, row_idx) -> CurFactors:
    """Extract ``C``, ``R`` and the Frobenius-optimal middle matrix.

    ``M = C^+ A R^+`` is obtained from two QR least-squares solves,
    ``X = argmin ||C X - A||`` then ``M = argmin ||M R - X||``, which equals
    ``(C^T C)^{-1} C^T A R^T (R R^T)^{-1}`` without forming either Gram
    matrix.
    """
    a = as_matrix(a)
    m, n = a.shape
    p = _index_list(col_idx, n, "col_idx")
    s = _index_list(row_idx, m, "row_idx")
    if p.size != s.size:
        raise ValueError(f"need equal numbers of columns and rows, got {p.size} and {s.size}")
    c = a[:, p]
    r = a[s, :]
    x = least_squares(c, a, what="C (selected columns)")
    m_mid = least_squares(r.T, x.T, what="R (selected rows)").T
    return CurFactors(c, m_mid, r, p, s)


def relative_error(a, f: CurFactors) -> float:
    """``||a - C M R||_2 / ||a||_2``."""
    a = as_matrix(a)
    denom = spectral_norm(a)
    if denom == 0:
        raise ValueError("relative error undefined for the zero matrix")
    return spectral_norm(a - f.reconstruct()) / denom


def _sigma_min_checked(block: np.ndarray, name: str) -> float:
    smin = sigma_min(block)
    smax = spectral_norm(block)
    if smin == 0 or smax / smin > COND_LIMIT:
        raise RankDeficientError(f"{name} is rank deficient (sigma_min = {smin:.3g})")
    return smin


def bound_diagnostic(
    a, svd: TruncatedSvd, f: CurFactors, sigma_k_plus_1: float, observed_error: float | None = None
) -> BoundReport:
    """Compare ``||A - CMR||_2`` with ``(1/smin(V^T P) + 1/smin(S^T U)) * sigma_{k+1}``.

    ``svd`` holds the rank-``k`` vectors the bound refers to (``k`` may be
    smaller than the CUR rank).  Exceeding the bound is reported through
    ``BoundReport.violated``, never raised.  Pass ``observed_error`` to
    reuse an already computed ``||A - CMR||_2``.
    """
    a = as_matrix(a)
    if sigma_k_plus_1 < 0:
        raise ValueError("sigma_k_plus_1 must be nonnegative")
    if svd.rank > f.rank:
        raise ValueError(f"SVD rank {svd.rank} exceeds CUR rank {f.rank}")
    vp = _sigma_min_checked(svd.v[f.col_idx, :], "V^T P")
    su = _sigma_min_checked(svd.u[f.row_idx, :], "S^T U")
    bound = (1.0 / vp + 1.0 / su) * sigma_k_plus_1
    if observed_error is None:
        observed_error = spectral_norm(a - f.reconstruct())
    return BoundReport(vp, su, float(sigma_k_plus_1), bound, float(observed_error))


def cur_indices(method: str, svd: TruncatedSvd, k_hat: int):
    """Row and column indices of a rank-``k_hat`` CUR from one SVD.

    DEIM and Q-DEIM need ``svd.rank == k_hat``; L-DEIM and leverage scores
    may use fewer vectors.  Returns ``(row_report, col_report)``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    rows = select(method, svd.u, k_hat)
    cols = select(method, svd.v, k_hat)
    return rows, cols


def cur_decompose(a, k_hat: int, method: str = "ldeim", k: int | None = None) -> CurFactors:
    """One-call CUR of ``a`` with ``k_hat`` rows and columns.

    ``k`` is the number of singular vectors handed to the selector.  It
    defaults to ``ceil(k_hat / 2)`` for L-DEIM, 2 for leverage scores and
    ``k_hat`` otherwise.
    """
    a = as_matrix(a)
    if k is None:
        k = {"ldeim": math.ceil(k_hat / 2), "leverage": min(2, k_hat)}.get(method, k_hat)
    svd = truncated_svd(a, k)
    rows, cols = cur_indices(method, svd, k_hat)
    return build_cur(a, cols.indices, rows.indices)
