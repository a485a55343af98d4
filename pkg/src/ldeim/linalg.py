"""Dense kernels shared by every selection method.

Truncated SVD, greedy column-pivoted QR, small square solves, QR-based
least squares and a couple of singular-value helpers.  Everything works on
float64 numpy arrays and returns new arrays; inputs are never modified.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .exceptions import ConvergenceError, RankDeficientError, SingularMatrixError

#: Condition-number estimate above which a system counts as singular.
COND_LIMIT = 1e14


@dataclass(frozen=True)
class TruncatedSvd:
    """Leading singular triplets ``a ~ u @ diag(sigma) @ v.T``."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    @property
    def rank(self) -> int:
        return self.sigma.shape[0]

    def truncate(self, k: int) -> TruncatedSvd:
        """Return the leading ``k`` triplets (no recomputation)."""
        if not 1 <= k <= self.rank:
            raise ValueError(f"k must be in [1, {self.rank}], got {k}")
        return TruncatedSvd(self.u[:, :k], self.sigma[:k], self.v[:, :k])


@dataclass(frozen=True)
class PivotedQr:
    """Pivot sequence of a greedy column-pivoted QR.

    ``r_diag[j]`` is the residual norm of the column picked at step ``j``,
    i.e. ``|R[j, j]|`` of the pivoted factorization.
    """

    pivot_order: np.ndarray
    r_diag: np.ndarray
    r: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {arr.shape}")
    return arr


def truncated_svd(a, k: int) -> TruncatedSvd:
    """Leading ``k`` singular triplets of ``a``.

    Computes a thin SVD and truncates it. Each left singular vector is
    signed so that its largest-magnitude entry (first one on ties) is
    nonnegative; the matching right vector is flipped with it.
    """
    a = as_matrix(a)
    m, n = a.shape
    if not 1 <= k <= min(m, n):
        raise ValueError(f"k must be in [1, {min(m, n)}], got {k}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    try:
        u, s, vt = sla.svd(a, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        try:
            u, s, vt = sla.svd(a, full_matrices=False, lapack_driver="gesvd")
        except np.linalg.LinAlgError as exc:
            raise ConvergenceError(f"SVD did not converge: {exc}") from exc
    u = u[:, :k]
    v = vt[:k].T
    s = s[:k]
    lead = np.argmax(np.abs(u), axis=0)
    signs = np.where(u[lead, np.arange(k)] < 0, -1.0, 1.0)
    return TruncatedSvd(u * signs, s.copy(), v * signs)


def pivoted_qr_select(b, k: int) -> PivotedQr:
    """Greedy Businger-Golub column pivoting on ``b``.

    At every step the remaining column with the largest residual 2-norm is
    chosen (lowest column index on exact ties) and the other columns are
    orthogonalized against it with a Householder reflector.  Residual norms
    are recomputed from the updated trailing block each step rather than
    downdated.
    """
    w = as_matrix(b).copy()
    rows, cols = w.shape
    if not 1 <= k <= cols:
        raise ValueError(f"k must be in [1, {cols}], got {k}")

    remaining = np.ones(cols, dtype=bool)
    order = np.empty(k, dtype=np.intp)
    r_diag = np.zeros(k)
    for j in range(k):
        if j < rows:
            norms = np.linalg.norm(w[j:, :], axis=0)
        else:
            norms = np.zeros(cols)
        norms[~remaining] = -1.0
        piv = int(np.argmax(norms))
        order[j] = piv
        r_diag[j] = norms[piv]
        remaining[piv] = False
        if j >= rows - 1 or norms[piv] == 0.0:
            continue
        x = w[j:, piv]
        alpha = -np.copysign(norms[piv], x[0])
        hv = x.copy()
        hv[0] -= alpha
        hv /= np.linalg.norm(hv)
        w[j:, :] -= 2.0 * np.outer(hv, hv @ w[j:, :])
    r = np.triu(w[: min(rows, k), order])
    return PivotedQr(order, r_diag, r)


def _rcond_general(lu: np.ndarray, anorm: float) -> float:
    rcond, info = lapack.dgecon(lu, anorm, norm="1")
    return float(rcond) if info == 0 else 0.0


def solve_small(a, b, step: str | None = None) -> np.ndarray:
    """Solve ``a @ x = b`` for a small square ``a`` via pivoted LU.

    Raises SingularMatrixError when the 1-norm condition estimate exceeds
    ``COND_LIMIT``; ``step`` names the caller in that message.
    """
    a = as_matrix(a, "a")
    b = np.asarray(b, dtype=np.float64)
    k = a.shape[0]
    if a.shape[1] != k:
        raise ValueError(f"a must be square, got shape {a.shape}")
    if b.shape[0] != k:
        raise ValueError(f"b has {b.shape[0]} rows, expected {k}")
    where = f" in {step}" if step else ""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sla.LinAlgWarning)
        lu, piv = sla.lu_factor(a, check_finite=False)
    anorm = float(np.abs(a).sum(axis=0).max()) if k else 0.0
    rcond = _rcond_general(lu, anorm) if anorm > 0 else 0.0
    if rcond == 0.0 or 1.0 / rcond > COND_LIMIT:
        cond = np.inf if rcond == 0.0 else 1.0 / rcond
        raise SingularMatrixError(
            f"matrix is singular to working precision{where} "
            f"(condition estimate {cond:.3g})"
        )
    return sla.lu_solve((lu, piv), b, check_finite=False)


def least_squares(a, b, what: str = "a") -> np.ndarray:
    """``argmin_x ||a @ x - b||_F`` through a thin Householder QR of ``a``.

    ``a`` must be tall (or square) with full column rank; RankDeficientError
    names ``what`` otherwise.
    """
    a = as_matrix(a, what)
    b = np.asarray(b, dtype=np.float64)
    m, k = a.shape
    if m < k:
        raise RankDeficientError(f"{what} has more columns ({k}) than rows ({m})")
    if b.shape[0] != m:
        raise ValueError(f"b has {b.shape[0]} rows, expected {m}")
    q, r = sla.qr(a, mode="economic", check_finite=False)
    rcond, info = lapack.dtrcon(r, norm="1", uplo="U", diag="N")
    if info != 0 or rcond == 0.0 or 1.0 / rcond > COND_LIMIT:
        raise RankDeficientError(
            f"{what} is rank deficient (condition estimate "
            f"{np.inf if rcond == 0 else 1.0 / rcond:.3g})"
        )
    return sla.solve_triangular(r, q.T @ b, check_finite=False)


def _svdvals(a: np.ndarray) -> np.ndarray:
    try:
        return sla.svdvals(a, check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"SVD did not converge: {exc}") from exc


def spectral_norm(a) -> float:
    """Largest singular value of ``a``."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(_svdvals(a)[0])


def sigma_min(a) -> float:
    """Smallest of the ``min(rows, cols)`` singular values of ``a``."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(_svdvals(a)[-1])
