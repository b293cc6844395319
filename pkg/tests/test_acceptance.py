"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line (also repeated in the
pytest terminal summary) and asserts the same condition.
"""
import time

import numpy as np
import pytest

from qadaprune import PruneConfig, QAdaPrune, make_optimizer, param_shift_grad
from qadaprune.harness import preset, run_experiment
from qadaprune.harness.config import ExperimentConfig
from qadaprune.harness.gradcheck import FAMILIES, run_gradcheck
from qadaprune.harness.runner import init_params, train
from qadaprune.harness.tasks import build_task

from .oracle import replay_prune

pytestmark = pytest.mark.slow


def hea(n, layers=2):
    return {"family": "hardware_efficient", "n_qubits": n, "n_layers": layers}


def config(name, **kw):
    """A preset with overrides; nested sections may be given as dicts."""
    return ExperimentConfig.from_dict({**preset(name).to_dict(), **kw})


# -- 1 -------------------------------------------------------------------------------

def test_criterion_1_gradient_check(report):
    start = time.perf_counter()
    trials = run_gradcheck(trials=60, seed=0, h=1e-5)
    elapsed = time.perf_counter() - start
    worst = max(t.max_abs_error for t in trials)
    covered = {t.family for t in trials} == set(FAMILIES)
    losses = {t.loss for t in trials}
    three_losses = {"l2", "bce"} <= losses and losses & {"expectation", "identity"}
    small = all(t.n_qubits <= 4 and t.n_layers <= 3 for t in trials)
    ok = worst < 1e-4 and elapsed < 60 and covered and bool(three_losses) and small and len(trials) >= 50
    report(1, ok, f"{len(trials)} random configs, families {sorted({t.family for t in trials})}, "
                  f"losses {sorted(losses)}, max |shift - fd| = {worst:.2e} (< 1e-4), {elapsed:.1f}s (< 60s)")
    assert ok


# -- 2 -------------------------------------------------------------------------------

def plain_loop(cfg):
    """Training written without any pruning code: cost, shift rule, optimizer."""
    task = build_task(cfg)
    params = init_params(cfg, task.n_params)
    opt = make_optimizer(cfg.optimizer, task.n_params)
    costs, trajectory = [], []
    for step, (_, cost) in enumerate(task.step_costs()):
        value, expvals = cost.evaluate(params, key=(step, 0, 0))
        grad = param_shift_grad(cost, params, step=step, base=expvals).grad
        params = opt.step(params, grad)
        costs.append(value)
        trajectory.append(params.copy())
    return np.array(costs), np.array(trajectory)


FAMILY_CONFIGS = {
    "barren": lambda: config("barren", ansatz=hea(4), steps=100),
    "iris": lambda: preset("iris", steps=100),
    "vqe": lambda: preset("vqe", steps=100),
    "mnist": lambda: preset("mnist", epochs=7),
}


def test_criterion_2_disabled_pruning_bit_identical(report):
    start = time.perf_counter()
    details, ok = [], True
    for name, make in FAMILY_CONFIGS.items():
        cfg = make().without_pruning()
        result = run_experiment(cfg, keep_history=True)
        costs, traj = plain_loop(cfg)
        ran = len(result.records)
        same = (ran >= 100 and ran == len(costs)
                and np.array_equal(result.costs(), costs)
                and np.array_equal(np.array([h["params"] for h in result.history[1:]]), traj[:-1])
                and np.array_equal(result.params, traj[-1]))
        ok &= bool(same)
        details.append(f"{name} {ran} steps {'identical' if same else 'DIFFER'}")
    elapsed = time.perf_counter() - start
    report(2, ok, ", ".join(details) + f" ({elapsed:.1f}s)")
    assert ok


# -- 3 -------------------------------------------------------------------------------

def random_run_config(rng, i):
    family = ["barren", "vqe", "iris", "mnist"][i % 4]
    prune = {"window": int(rng.integers(1, 6)),
             "k": None if rng.random() < 0.5 else int(rng.integers(1, 4)), "enabled": True}
    common = dict(prune=prune, seed=int(rng.integers(0, 2**31)), record_snapshots=True,
                  init=str(rng.choice(["uniform", "normal"])))
    if family == "barren":
        return config("barren", ansatz=hea(int(rng.integers(2, 5)), int(rng.integers(1, 3))),
                      steps=int(rng.integers(20, 40)), **common)
    if family == "vqe":
        return config("vqe", ansatz={"family": "vqe_custom", "n_qubits": 4, "n_layers": int(rng.integers(1, 4))},
                      steps=int(rng.integers(20, 40)), **common)
    if family == "iris":
        return config("iris", ansatz={"family": "iris_qnn", "n_qubits": 4, "n_layers": int(rng.integers(2, 5))},
                      steps=int(rng.integers(20, 40)), shots=int(rng.choice([0, 200])), **common)
    return config("mnist", ansatz={"family": "mnist_qnn", "n_qubits": 4, "n_layers": int(rng.integers(1, 3))},
                  epochs=1, batch_size=10, train_size=250, **common)


def test_criterion_3_state_machine_replay(report):
    rng = np.random.default_rng(2024)
    runs, with_events, frozen_total, mismatches = 24, 0, 0, []
    for i in range(runs):
        cfg = random_run_config(rng, i)
        task = build_task(cfg)
        pruner = QAdaPrune(task.n_params, cfg.prune, seed=cfg.seed)
        result = train(task, cfg, pruner, keep_history=True)
        grads = [h["grad"] for h in result.history]
        params = [h["params"] for h in result.history]
        snaps, events = replay_prune(grads, params, cfg.prune.window, cfg.prune.k, cfg.seed)
        same = len(snaps) == len(result.records)
        for rec, (tau, acc, frozen) in zip(result.records, snaps):
            same &= rec.tau == tau and rec.accum == acc and rec.n_frozen == sum(frozen)
        same &= [(e.step, list(e.saliency), list(e.frozen_now)) for e in result.events] == \
            [(s, sal, ch) for s, sal, ch, _ in events]
        if events:
            same &= pruner.state.frozen_values.tolist() == events[-1][3]
        same &= pruner.frozen.tolist() == (snaps[-1][2] if snaps else [])
        if not same:
            mismatches.append(i)
        with_events += any(e.frozen_now for e in result.events)
        frozen_total += pruner.n_frozen
    ok = not mismatches and runs >= 20
    report(3, ok, f"{runs} logged runs replayed, {with_events} with freezes ({frozen_total} slots frozen), "
                  f"tau/accum/saliency/freeze mismatches: {mismatches or 'none'}")
    assert ok


# -- 4 -------------------------------------------------------------------------------

def test_criterion_4_barren_plateau(report):
    start = time.perf_counter()
    final = {}
    ratios = {}
    for n in (2, 4, 6, 8):
        for seed in range(5):
            cfg = config("barren", ansatz=hea(n), seed=seed)
            final[n, seed, True] = (p := run_experiment(cfg)).summary.final_cost
            ratios[n, seed] = p.summary.pruning_ratio
            final[n, seed, False] = run_experiment(cfg.without_pruning()).summary.final_cost
    elapsed = time.perf_counter() - start

    def med(n, pruned):
        return float(np.median([final[n, s, pruned] for s in range(5)]))

    a = med(8, True) < med(8, False)
    active = [ratios[8, s] for s in range(5) if ratios[8, s] > 0]
    b = all(0.10 <= r <= 0.40 for r in active)
    c = all(final[n, s, arm] < 0.05 for n in (2, 4) for s in range(5) for arm in (True, False))
    ok = a and b and c and elapsed < 600
    small = {(n, arm): [round(final[n, s, arm], 3) for s in range(5)] for n in (2, 4) for arm in (True, False)}
    report(4, ok, f"(a) n=8 median cost pruned {med(8, True):.4f} vs unpruned {med(8, False):.4f} "
                  f"{'ok' if a else 'not lower'}; (b) n=8 ratios {[round(ratios[8, s], 2) for s in range(5)]} "
                  f"{'in' if b else 'outside'} [0.10, 0.40]; (c) n<=4 final costs "
                  f"pruned n=2 {small[2, True]}, n=4 {small[4, True]}, unpruned n=2 {small[2, False]}, "
                  f"n=4 {small[4, False]} {'all' if c else 'not all'} < 0.05; {elapsed:.0f}s (< 600s)")
    assert ok


# -- 5 and 7 ---------------------------------------------------------------------------

IRIS_CACHE = {}


def iris_runs():
    if not IRIS_CACHE:
        start = time.perf_counter()
        for layers in (4, 6, 8):
            for seed in range(3):
                cfg = config("iris", ansatz={"family": "iris_qnn", "n_qubits": 4, "n_layers": layers}, seed=seed)
                IRIS_CACHE[layers, seed, True] = run_experiment(cfg).summary
                IRIS_CACHE[layers, seed, False] = run_experiment(cfg.without_pruning()).summary
        IRIS_CACHE["elapsed"] = time.perf_counter() - start
    return IRIS_CACHE


def test_criterion_5_iris(report):
    runs = iris_runs()
    parts, ok = [], True
    for layers in (4, 6, 8):
        acc_p = [runs[layers, s, True].final_accuracy for s in range(3)]
        acc_u = [runs[layers, s, False].final_accuracy for s in range(3)]
        gap = abs(np.mean(acc_p) - np.mean(acc_u))
        ratio = [runs[layers, s, True].pruning_ratio for s in range(3)]
        ok &= gap <= 0.05
        parts.append(f"L={layers} acc pruned {np.round(acc_p, 3).tolist()} unpruned {np.round(acc_u, 3).tolist()} "
                     f"mean gap {gap:.3f}, ratios {np.round(ratio, 2).tolist()}")
    mean_ratio = float(np.mean([runs[4, s, True].pruning_ratio for s in range(3)]))
    ok &= mean_ratio >= 0.25 and runs["elapsed"] < 900
    report(5, ok, "; ".join(parts) + f"; L=4 mean pruning ratio {mean_ratio:.3f} (>= 0.25); "
                  f"{runs['elapsed']:.0f}s (< 900s)")
    assert ok


def test_criterion_7_overhead(report):
    cfg = preset("iris", seed=0)
    pruned = run_experiment(cfg)
    unpruned = run_experiment(cfg.without_pruning())
    equal_steps = pruned.summary.total_steps == unpruned.summary.total_steps
    ratio = pruned.summary.wall_ms / unpruned.summary.wall_ms
    ok = equal_steps and ratio <= 2.0
    report(7, ok, f"Iris L=4, {pruned.summary.total_steps} steps each, wall-clock pruned/unpruned = {ratio:.2f} (<= 2.0)")
    assert ok


# -- 6 -------------------------------------------------------------------------------

def test_criterion_6_vqe(report):
    start = time.perf_counter()
    parts, ok = [], True
    for name in ("vqe", "vqe_adam"):
        cfg = preset(name, seed=0)
        p = run_experiment(cfg).summary
        u = run_experiment(cfg.without_pruning()).summary
        err_u = abs(u.final_energy - u.exact_energy)
        diff = abs(p.final_energy - u.final_energy)
        good = err_u <= 0.02 and diff <= 0.05 and p.n_frozen >= 1
        ok &= good
        parts.append(f"{name}: exact {u.exact_energy:.5f}, unpruned {u.final_energy:.5f} (err {err_u:.4f} <= 0.02), "
                     f"pruned {p.final_energy:.5f} (|diff| {diff:.4f} <= 0.05), pruned {p.n_frozen}/{p.n_params}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 300
    report(6, ok, "; ".join(parts) + f"; {elapsed:.0f}s (< 300s)")
    assert ok


# -- 8 -------------------------------------------------------------------------------

def test_criterion_8_mnist_substitute(report):
    start = time.perf_counter()
    acc_p, acc_u, ev_p, ev_u, ratio = [], [], [], [], []
    for seed in range(3):
        cfg = preset("mnist", seed=seed)
        p = run_experiment(cfg).summary
        u = run_experiment(cfg.without_pruning()).summary
        acc_p.append(p.final_accuracy)
        acc_u.append(u.final_accuracy)
        ev_p.append(p.total_evaluations)
        ev_u.append(u.total_evaluations)
        ratio.append(p.pruning_ratio)
    elapsed = time.perf_counter() - start
    gap = abs(np.mean(acc_p) - np.mean(acc_u))
    fewer = all(a < b for a, b in zip(ev_p, ev_u))
    ok = gap <= 0.05 and fewer and elapsed < 600
    report(8, ok, f"val acc pruned {np.round(acc_p, 3).tolist()} unpruned {np.round(acc_u, 3).tolist()} "
                  f"(mean gap {gap:.3f} <= 0.05); evaluations pruned {ev_p} vs unpruned {ev_u} "
                  f"({'strictly fewer' if fewer else 'not fewer'}); pruning ratios {ratio}; {elapsed:.0f}s (< 600s)")
    assert ok
