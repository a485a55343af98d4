"""Row/column index selection from singular-vector blocks.

Four strategies are provided:

``deim_select``
    Greedy interpolation: one index per basis vector, each chosen as the
    largest entry of that vector after removing its interpolant on the
    previously chosen indices.
``ldeim_select``
    DEIM for the first ``k`` indices, then the ``k_hat - k`` unselected
    indices whose rows of the DEIM residual block have the largest 2-norm.
    Lets ``k`` singular vectors drive a rank-``k_hat`` selection.
``qdeim_select``
    Column-pivoted QR on the transposed basis.
``leverage_select``
    Largest rank-``k`` leverage scores (squared row norms of the basis).

Every selector takes an ``(dim, k)`` block with orthonormal columns (left
vectors pick rows of ``A``, right vectors pick columns) and returns
0-based indices as an ``intp`` array in selection order.  Ties in any
argmax or sort go to the lowest index.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .exceptions import SingularMatrixError
from .linalg import pivoted_qr_select, solve_small

METHODS = ("deim", "ldeim", "qdeim", "leverage")

#: Largest tolerated entry of ``|basis.T @ basis - I|``.
ORTHONORMALITY_TOL = 1e-6


@dataclass(frozen=True)
class SelectionReport:
    method: str
    indices: np.ndarray
    scores: np.ndarray
    selection_seconds: float


def check_basis(basis, name: str = "basis") -> np.ndarray:
    """Validate a tall block with (approximately) orthonormal columns."""
    b = np.asarray(basis, dtype=np.float64)
    if b.ndim == 1:
        b = b[:, None]
    if b.ndim != 2 or b.shape[1] == 0:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {b.shape}")
    dim, k = b.shape
    if k > dim:
        raise ValueError(f"{name} has more columns ({k}) than rows ({dim})")
    if not np.all(np.isfinite(b)):
        raise ValueError(f"{name} has non-finite entries")
    dev = np.abs(b.T @ b - np.eye(k)).max()
    if dev > ORTHONORMALITY_TOL:
        raise ValueError(
            f"{name} columns are not orthonormal: max |B^T B - I| = {dev:.3g} "
            f"exceeds {ORTHONORMALITY_TOL:g}"
        )
    return b


def _deim_core(u: np.ndarray):
    """Run DEIM and keep the residual of every column.

    Returns ``(indices, residuals, pivots)``.  Column ``j`` of ``residuals``
    is basis column ``j`` minus its interpolant on the first ``j`` selected
    indices, i.e. the vector whose argmax gave ``indices[j]``; column 0 is
    the basis vector itself.
    """
    m, k = u.shape
    idx = np.empty(k, dtype=np.intp)
    pivots = np.empty(k)
    residuals = np.empty_like(u)
    r = u[:, 0]
    for j in range(k):
        if j > 0:
            sel = idx[:j]
            coef = solve_small(u[sel, :j], u[sel, j], step=f"DEIM deflation of column {j}")
            r = u[:, j] - u[:, :j] @ coef
        residuals[:, j] = r
        i = int(np.argmax(np.abs(r)))
        if j > 0 and np.any(idx[:j] == i):
            raise SingularMatrixError(
                f"DEIM residual of column {j} vanishes; basis is numerically rank deficient"
            )
        idx[j] = i
        pivots[j] = abs(r[i])
    return idx, residuals, pivots


def _top_unselected(scores: np.ndarray, selected: np.ndarray, count: int) -> np.ndarray:
    # Stable sort of the negated scores: largest first, lowest index on ties.
    # Exact zeros therefore trail in ascending index order.
    mask = np.ones(scores.shape[0], dtype=bool)
    mask[selected] = False
    candidates = np.flatnonzero(mask)
    order = np.argsort(-scores[candidates], kind="stable")
    return candidates[order[:count]]


def deim_select(u) -> np.ndarray:
    """DEIM indices for the columns of ``u``, one per column."""
    u = check_basis(u, "u")
    return _deim_core(u)[0]


def ldeim_residual_scores(u) -> tuple[np.ndarray, np.ndarray]:
    """DEIM indices together with the residual row norms used by L-DEIM."""
    u = check_basis(u, "u")
    idx, residuals, _ = _deim_core(u)
    return idx, np.linalg.norm(residuals, axis=1)


def ldeim_select(u, k_hat: int) -> np.ndarray:
    """Select ``k_hat >= k`` indices from ``k`` basis vectors.

    The first ``k`` entries are exactly ``deim_select(u)``.  The remaining
    ``k_hat - k`` are the unselected indices with the largest residual row
    norms.  If fewer than ``k_hat - k`` of those norms are positive, the
    leftover slots are filled in ascending index order.

    Parameters
    ----------
    u : (m, k) array
        Orthonormal (left or right) singular vectors.
    k_hat : int
        Number of indices to return, ``k <= k_hat <= m``.

    Returns
    -------
    (k_hat,) intp array
    """
    u = check_basis(u, "u")
    m, k = u.shape
    if not k <= k_hat <= m:
        raise ValueError(f"k_hat must be in [{k}, {m}], got {k_hat}")
    return _ldeim(u, k_hat)[0]


def _ldeim(u: np.ndarray, k_hat: int):
    idx, residuals, _ = _deim_core(u)
    ell = np.linalg.norm(residuals, axis=1)
    k = u.shape[1]
    if k_hat == k:
        return idx, ell
    tail = _top_unselected(ell, idx, k_hat - k)
    return np.concatenate([idx, tail]), ell


def qdeim_select(basis, k_sel: int | None = None) -> np.ndarray:
    """Pivot columns of a column-pivoted QR of ``basis.T``."""
    basis = check_basis(basis)
    k_sel = basis.shape[1] if k_sel is None else k_sel
    if not 1 <= k_sel <= basis.shape[0]:
        raise ValueError(f"k_sel must be in [1, {basis.shape[0]}], got {k_sel}")
    return pivoted_qr_select(basis.T, k_sel).pivot_order


def leverage_scores(v) -> np.ndarray:
    """Squared row norms of ``v``; they sum to ``v.shape[1]``."""
    v = check_basis(v, "v")
    return np.einsum("ij,ij->i", v, v)


def leverage_select(v, k_sel: int) -> np.ndarray:
    """Indices of the ``k_sel`` largest leverage scores, largest first."""
    scores = leverage_scores(v)
    if not 1 <= k_sel <= scores.shape[0]:
        raise ValueError(f"k_sel must be in [1, {scores.shape[0]}], got {k_sel}")
    return np.argsort(-scores, kind="stable")[:k_sel]


def select(method: str, basis, k_sel: int | None = None) -> SelectionReport:
    """Run one selector and time it.

    ``k_sel`` defaults to the number of basis columns, the only value DEIM
    accepts.  The scores are
    pivot magnitudes for ``deim`` and ``qdeim``, residual row norms for
    ``ldeim`` and leverage scores for ``leverage``.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
    t0 = time.perf_counter()
    b = check_basis(basis)
    k = b.shape[1]
    k_sel = k if k_sel is None else k_sel
    if method == "deim":
        if k_sel != k:
            raise ValueError(f"DEIM selects exactly k={k} indices, requested {k_sel}")
        idx, _, scores = _deim_core(b)
    elif method == "ldeim":
        if not k <= k_sel <= b.shape[0]:
            raise ValueError(f"k_hat must be in [{k}, {b.shape[0]}], got {k_sel}")
        idx, ell = _ldeim(b, k_sel)
        scores = ell[idx]
    elif method == "qdeim":
        if not 1 <= k_sel <= b.shape[0]:
            raise ValueError(f"k_sel must be in [1, {b.shape[0]}], got {k_sel}")
        qr = pivoted_qr_select(b.T, k_sel)
        idx, scores = qr.pivot_order, qr.r_diag
    else:
        lev = np.einsum("ij,ij->i", b, b)
        if not 1 <= k_sel <= lev.shape[0]:
            raise ValueError(f"k_sel must be in [1, {lev.shape[0]}], got {k_sel}")
        idx = np.argsort(-lev, kind="stable")[:k_sel]
        scores = lev[idx]
    elapsed = time.perf_counter() - t0
    return SelectionReport(method, idx, np.asarray(scores, dtype=np.float64), elapsed)
