"""
Error and runtime versus target rank
====================================

``run_experiment`` repeats the whole comparison over a range of target
ranks.  The singular vectors are computed once, before any timing starts,
so the reported times cover index selection only.  The same sweep is
available from the shell::

    python -m ldeim --synthetic 2000x100:30:0.05 --ranks 2:50:4 --out sweep.csv
"""

import tempfile
from pathlib import Path

import ldeim

cfg = ldeim.ExperimentConfig(
    input=ldeim.SyntheticSpec(2000, 100, true_rank=30, noise_level=0.05, seed=3),
    preprocess=ldeim.Preprocess.COL_CENTER,
    ranks=(4, 40, 4),
    repeats=3,
    bound=True,
)
rows = ldeim.run_experiment(cfg)

print(f"{'k_hat':>5} " + " ".join(f"{m:>18}" for m in ldeim.METHODS))
for k_hat in range(4, 41, 4):
    cells = []
    for m in ldeim.METHODS:
        (r,) = [r for r in rows if r.method == m and r.k_hat == k_hat]
        cells.append(f"{r.rel_error:.3f} /{r.selection_seconds * 1e3:6.2f}ms")
    print(f"{k_hat:>5} " + " ".join(f"{c:>18}" for c in cells))

out = Path(tempfile.gettempdir()) / "ldeim_sweep.csv"
ldeim.emit_csv(rows, out)
print("\nwrote", out)
print(out.read_text().splitlines()[0])
