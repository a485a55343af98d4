"""
Loading and preprocessing matrices
==================================

Matrices come from Matrix Market files (coordinate or array, real,
general) or from headerless CSV.  Three preprocessing recipes are
available: unit-norm rows (term-document data), row centering (gene
expression data) and column centering (ratings data).
"""

import tempfile
from pathlib import Path

import numpy as np

import ldeim

tmp = Path(tempfile.mkdtemp())

# A sparse-looking matrix written as Matrix Market coordinates (1-based).
(tmp / "small.mtx").write_text(
    "%%MatrixMarket matrix coordinate real general\n"
    "3 4 4\n"
    "1 1 3.0\n"
    "1 2 4.0\n"
    "2 3 -1.5\n"
    "3 4 2.0\n"
)
A = ldeim.load_matrix(tmp / "small.mtx")
print("loaded:\n", A)

print("unit-norm rows:\n", ldeim.preprocess(A, "row-unit-norm"))
print("row means after row-center:", ldeim.preprocess(A, "row-center").mean(axis=1))
print("col means after col-center:", ldeim.preprocess(A, "col-center").mean(axis=0))

# Writing uses 17 significant digits, so a reload is exact.
B = ldeim.synthesize(ldeim.SyntheticSpec(5, 3, 2, 0.1, seed=4))
ldeim.write_matrix(tmp / "b.csv", B)
print("csv round trip exact:", np.array_equal(ldeim.load_matrix(tmp / "b.csv"), B))

try:
    (tmp / "bad.csv").write_text("1,2,3\n4,5\n")
    ldeim.load_matrix(tmp / "bad.csv")
except ldeim.MatrixFormatError as exc:
    print("rejected:", exc)
