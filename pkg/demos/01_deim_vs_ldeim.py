"""
DEIM and L-DEIM index selection
===============================

DEIM picks exactly one row index per singular vector.  L-DEIM keeps the
residual vectors DEIM produces along the way and uses their row norms to
pick extra indices, so a rank-``k_hat`` CUR can be built from only
``k = k_hat / 2`` singular vectors.
"""

import numpy as np

import ldeim

# A 300 x 200 matrix of effective rank 40 plus a little noise.
A = ldeim.synthesize(ldeim.SyntheticSpec(300, 200, true_rank=40, noise_level=0.02, seed=0))

k_hat = 20
svd_full = ldeim.truncated_svd(A, k_hat)     # what DEIM needs
svd_half = svd_full.truncate(k_hat // 2)     # what L-DEIM needs

rows_deim = ldeim.deim_select(svd_full.u)
rows_ldeim = ldeim.ldeim_select(svd_half.u, k_hat)
print("DEIM rows   :", rows_deim)
print("L-DEIM rows :", rows_ldeim)

# The first k entries of L-DEIM are plain DEIM on the k available vectors.
print("head matches DEIM on 10 vectors:", np.array_equal(rows_ldeim[:10], ldeim.deim_select(svd_half.u)))

# Build both CURs and compare their relative spectral errors.
f_deim = ldeim.build_cur(A, ldeim.deim_select(svd_full.v), rows_deim)
f_ldeim = ldeim.build_cur(A, ldeim.ldeim_select(svd_half.v, k_hat), rows_ldeim)
sigma = np.linalg.svd(A, compute_uv=False)
print(f"best rank-{k_hat} error  : {sigma[k_hat] / sigma[0]:.4f}")
print(f"DEIM   ({k_hat} vectors): {ldeim.relative_error(A, f_deim):.4f}")
print(f"L-DEIM ({k_hat // 2} vectors): {ldeim.relative_error(A, f_ldeim):.4f}")

# With k_hat = k, L-DEIM is DEIM.
print("k_hat = k reduces to DEIM:", np.array_equal(ldeim.ldeim_select(svd_full.u, k_hat), rows_deim))
