"""
How tight is the CUR error bound?
=================================

For index sets ``s`` (rows) and ``p`` (columns) the CUR error satisfies

    ||A - CMR|| <= (1/smin(V[p, :]) + 1/smin(U[s, :])) * sigma_{k+1}

so a good selector keeps both submatrices well conditioned.  This script
evaluates the bound for every method on a few random matrices.
"""

import numpy as np

import ldeim

rng = np.random.default_rng(1)
k = 6
print(f"{'method':>9} {'smin(VP)':>9} {'smin(SU)':>9} {'bound':>8} {'error':>8} {'ratio':>6}")
for trial in range(3):
    A = rng.standard_normal((60, 40))
    full = ldeim.truncated_svd(A, k + 1)
    svd = full.truncate(k)
    for method in ("deim", "qdeim", "ldeim"):
        # L-DEIM gets the same k vectors but picks 2k indices
        k_hat = 2 * k if method == "ldeim" else k
        rows, cols = ldeim.cur_indices(method, svd, k_hat)
        f = ldeim.build_cur(A, cols.indices, rows.indices)
        rep = ldeim.bound_diagnostic(A, svd, f, full.sigma[k])
        print(f"{method:>9} {rep.sigma_min_vp:9.3f} {rep.sigma_min_su:9.3f} "
              f"{rep.bound_value:8.3f} {rep.observed_error:8.3f} {rep.ratio:6.3f}")
    print()
