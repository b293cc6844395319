"""16-feature binary classification with the 4-qubit image QNN and BCE loss.

The shipped CSV is a synthetic two-Gaussian set standing in for 4x4 images;
any CSV with 16 feature columns and a 0/1 label works the same way.
"""
from qadaprune.harness import preset, run_experiment

cfg = preset("mnist", seed=0, epochs=5, record_snapshots=True)
p = run_experiment(cfg)
u = run_experiment(cfg.without_pruning())
print("validation accuracy per epoch (pruned):  ", [round(r.val_accuracy, 3) for r in p.records if r.epoch is not None])
print("validation accuracy per epoch (unpruned):", [round(r.val_accuracy, 3) for r in u.records if r.epoch is not None])
print(f"pruned {p.summary.n_frozen}/{p.summary.n_params}, evaluations {p.summary.total_evaluations} "
      f"vs {u.summary.total_evaluations}")
# mini-batch gradients of a summed loss are large, so thresholds collapse
# to zero within a few steps and nothing qualifies for freezing
print("thresholds after the first 5 steps:", [round(x, 4) for x in p.records[4].tau])
