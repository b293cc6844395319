"""Iris (setosa vs versicolor) with angle embedding, L2 loss and 1000 shots."""
from qadaprune import AnsatzSpec
from qadaprune.harness import preset, run_experiment

for layers in (4, 8):
    cfg = preset("iris", seed=0, ansatz=AnsatzSpec("iris_qnn", 4, layers))
    p = run_experiment(cfg)
    u = run_experiment(cfg.without_pruning())
    print(f"L={layers}: accuracy pruned {p.summary.final_accuracy:.3f} / unpruned {u.summary.final_accuracy:.3f}, "
          f"pruned {p.summary.n_frozen}/{p.summary.n_params} slots, "
          f"evaluations {p.summary.total_evaluations} vs {u.summary.total_evaluations}")
    for ev in p.events:
        if ev.frozen_now:
            print(f"    step {ev.step}: froze {list(ev.frozen_now)}")
