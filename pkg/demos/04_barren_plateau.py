"""Identity learning on the hardware-efficient ansatz, with and without pruning.

Cost is 1 - |<0|U(theta)|0>|^2. Deeper registers start on a plateau where
gradients are tiny; the pruner sees almost no gradient change there and
freezes slots early.
"""
import numpy as np

from qadaprune import AnsatzSpec
from qadaprune.harness import preset, run_experiment

print(" n  seed  pruned cost (ratio, steps)   unpruned cost")
for n in (2, 4, 6):
    for seed in range(2):
        cfg = preset("barren", seed=seed, ansatz=AnsatzSpec("hardware_efficient", n, 2))
        p = run_experiment(cfg).summary
        u = run_experiment(cfg.without_pruning()).summary
        print(f"{n:2d}  {seed:4d}  {p.final_cost:.4f} ({p.pruning_ratio:.2f}, {p.total_steps:3d})"
              f"          {u.final_cost:.4f}")

# the cost curve of a single run is in the records
r = run_experiment(preset("barren", seed=0).without_pruning())
print("n=8 unpruned cost every 40 steps:", np.round(r.costs()[::40], 4))
