"""Reading, writing, generating and preprocessing dense matrices.

Two text formats are understood:

* Matrix Market, ``matrix coordinate real general`` (densified on load) and
  ``matrix array real general`` (column-major, as the format prescribes).
* Headerless comma-separated reals, one matrix row per line.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np

from .exceptions import MatrixFormatError

_MM_BANNER = "%%matrixmarket"


class Preprocess(str, Enum):
    NONE = "none"
    ROW_UNIT_NORM = "row-unit-norm"
    ROW_CENTER = "row-center"
    COL_CENTER = "col-center"


# Short names accepted on the command line.
PREPROCESS_ALIASES = {
    "none": Preprocess.NONE,
    "row-unit": Preprocess.ROW_UNIT_NORM,
    "row-unit-norm": Preprocess.ROW_UNIT_NORM,
    "row-center": Preprocess.ROW_CENTER,
    "col-center": Preprocess.COL_CENTER,
}


@dataclass(frozen=True)
class SyntheticSpec:
    """Low-rank-plus-noise test matrix ``X @ Y.T + noise_level * N``."""

    rows: int
    cols: int
    true_rank: int
    noise_level: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"shape must be positive, got {self.rows}x{self.cols}")
        if not 0 <= self.true_rank <= min(self.rows, self.cols):
            raise ValueError(
                f"true_rank {self.true_rank} exceeds min(rows, cols) = "
                f"{min(self.rows, self.cols)}"
            )
        if not (self.noise_level >= 0 and math.isfinite(self.noise_level)):
            raise ValueError(f"noise_level must be finite and >= 0, got {self.noise_level}")


def synthesize(spec: SyntheticSpec) -> np.ndarray:
    """Draw the matrix described by ``spec``.

    Uses numpy's PCG64 generator seeded with ``spec.seed``; the draw order is
    X, then Y, then N, so equal specs give bit-identical matrices.
    """
    rng = np.random.default_rng(spec.seed)
    x = rng.standard_normal((spec.rows, spec.true_rank))
    y = rng.standard_normal((spec.cols, spec.true_rank))
    noise = rng.standard_normal((spec.rows, spec.cols))
    return x @ y.T + spec.noise_level * noise


def preprocess(a, kind: Preprocess | str) -> np.ndarray:
    """Apply one preprocessing recipe and return a new matrix.

    ``row-unit-norm`` leaves all-zero rows untouched.
    """
    kind = Preprocess(kind)
    a = np.asarray(a, dtype=np.float64)
    if kind is Preprocess.NONE:
        return a.copy()
    if kind is Preprocess.ROW_UNIT_NORM:
        norms = np.linalg.norm(a, axis=1, keepdims=True)
        return np.divide(a, norms, out=a.copy(), where=norms > 0)
    if kind is Preprocess.ROW_CENTER:
        return a - a.mean(axis=1, keepdims=True)
    return a - a.mean(axis=0, keepdims=True)


def _check_finite(a: np.ndarray, path) -> np.ndarray:
    if not np.all(np.isfinite(a)):
        i, j = np.argwhere(~np.isfinite(a))[0]
        raise MatrixFormatError(f"{path}: non-finite entry at ({i}, {j})")
    return a


def _parse_float(token: str, path, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise MatrixFormatError(f"{path}:{lineno}: cannot parse {token!r} as a real") from None


def _parse_int(token: str, path, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise MatrixFormatError(f"{path}:{lineno}: expected an integer, got {token!r}") from None


def _read_matrix_market(path) -> np.ndarray:
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].lower().startswith(_MM_BANNER):
        raise MatrixFormatError(f"{path}: missing %%MatrixMarket header")
    header = lines[0].split()
    if len(header) != 5:
        raise MatrixFormatError(f"{path}:1: malformed header {lines[0]!r}")
    obj, fmt, field, symmetry = (h.lower() for h in header[1:])
    if obj != "matrix":
        raise MatrixFormatError(f"{path}: unsupported object {obj!r}")
    if fmt not in ("coordinate", "array"):
        raise MatrixFormatError(f"{path}: unsupported format {fmt!r}")
    if field != "real":
        raise MatrixFormatError(f"{path}: unsupported field {field!r} (only 'real')")
    if symmetry != "general":
        raise MatrixFormatError(f"{path}: unsupported symmetry {symmetry!r} (only 'general')")

    body = [
        (n, line.split())
        for n, line in enumerate(lines[1:], start=2)
        if line.strip() and not line.lstrip().startswith("%")
    ]
    if not body:
        raise MatrixFormatError(f"{path}: missing size line")
    size_no, size = body[0]
    want = 3 if fmt == "coordinate" else 2
    if len(size) != want:
        raise MatrixFormatError(f"{path}:{size_no}: size line needs {want} integers")
    dims = [_parse_int(t, path, size_no) for t in size]
    m, n = dims[0], dims[1]
    if m < 1 or n < 1:
        raise MatrixFormatError(f"{path}:{size_no}: empty matrix {m}x{n}")

    entries = body[1:]
    if fmt == "array":
        if len(entries) != m * n or any(len(t) != 1 for _, t in entries):
            raise MatrixFormatError(f"{path}: expected {m * n} single values, got {len(entries)} lines")
        vals = [_parse_float(t[0], path, no) for no, t in entries]
        return _check_finite(np.array(vals).reshape((n, m)).T.copy(), path)

    nnz = dims[2]
    if len(entries) != nnz:
        raise MatrixFormatError(f"{path}: header declares {nnz} entries, found {len(entries)}")
    a = np.zeros((m, n))
    for no, toks in entries:
        if len(toks) != 3:
            raise MatrixFormatError(f"{path}:{no}: expected 'row col value'")
        i, j = _parse_int(toks[0], path, no), _parse_int(toks[1], path, no)
        if not (1 <= i <= m and 1 <= j <= n):
            raise MatrixFormatError(f"{path}:{no}: index ({i}, {j}) outside {m}x{n}")
        a[i - 1, j - 1] = _parse_float(toks[2], path, no)
    return _check_finite(a, path)


def _read_csv(path) -> np.ndarray:
    rows = []
    with open(path, newline="") as fh:
        for lineno, rec in enumerate(csv.reader(fh), start=1):
            if not rec or all(not f.strip() for f in rec):
                continue
            rows.append([_parse_float(f.strip(), path, lineno) for f in rec])
            if len(rows[-1]) != len(rows[0]):
                raise MatrixFormatError(
                    f"{path}:{lineno}: row has {len(rows[-1])} fields, expected {len(rows[0])}"
                )
    if not rows:
        raise MatrixFormatError(f"{path}: no data")
    return _check_finite(np.array(rows, dtype=np.float64), path)


def _normalize_format(fmt: str) -> str:
    fmt = fmt.lower()
    if fmt in ("mtx", "matrix-market", "mm"):
        return "mtx"
    if fmt == "csv":
        return "csv"
    raise ValueError(f"unknown matrix format {fmt!r}")


def guess_format(path) -> str:
    return "csv" if Path(path).suffix.lower() == ".csv" else "mtx"


def load_matrix(path, format: str | None = None) -> np.ndarray:
    """Load a dense float64 matrix from a Matrix Market or CSV file."""
    fmt = _normalize_format(format or guess_format(path))
    if fmt == "mtx":
        return _read_matrix_market(path)
    return _read_csv(path)


def write_matrix(path, a, format: str | None = None, coordinate: bool = False) -> None:
    """Write ``a`` with 17 significant digits so that reloading is exact.

    For Matrix Market, ``coordinate=True`` writes only the nonzeros.
    """
    a = np.asarray(a, dtype=np.float64)
    fmt = _normalize_format(format or guess_format(path))
    with open(path, "w") as fh:
        if fmt == "csv":
            for row in a:
                fh.write(",".join(f"{x:.17g}" for x in row) + "\n")
            return
        m, n = a.shape
        if coordinate:
            nz = np.argwhere(a != 0)
            nz = nz[np.lexsort((nz[:, 0], nz[:, 1]))]
            fh.write("%%MatrixMarket matrix coordinate real general\n")
            fh.write(f"{m} {n} {len(nz)}\n")
            for i, j in nz:
                fh.write(f"{i + 1} {j + 1} {a[i, j]:.17g}\n")
        else:
            fh.write("%%MatrixMarket matrix array real general\n")
            fh.write(f"{m} {n}\n")
            for x in a.T.ravel():
                fh.write(f"{x:.17g}\n")
