"""The training loop and its JSON-lines telemetry."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from ..gradients import param_shift_grad
from ..optimizers import make_optimizer
from ..pruning import QAdaPrune
from .config import ExperimentConfig
from .tasks import Task, build_task

SCHEMA_VERSION = 1


@dataclass
class TrainRecord:
    step: int
    cost: float
    grad_norm: float
    n_frozen: int
    pruning_ratio: float
    evaluations: int
    wall_ms: float
    epoch: int | None = None
    val_accuracy: float | None = None
    tau: list | None = None
    accum: list | None = None
    terminal: bool = False

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        if not self.terminal:
            d.pop("terminal")
        return {"v": SCHEMA_VERSION, "kind": "record", **d}


@dataclass
class RunSummary:
    experiment: str
    final_cost: float
    total_steps: int
    pruning_ratio: float
    n_frozen: int
    n_params: int
    total_evaluations: int
    circuit_runs: int
    wall_ms: float
    stopped: str
    final_accuracy: float | None = None
    train_accuracy: float | None = None
    final_energy: float | None = None
    exact_energy: float | None = None

    def to_dict(self) -> dict:
        d = {k: v for k, v in asdict(self).items() if v is not None}
        return {"v": SCHEMA_VERSION, "kind": "summary", **d}


@dataclass
class RunResult:
    config: ExperimentConfig
    records: list
    summary: RunSummary
    params: np.ndarray
    events: list = field(default_factory=list)
    history: list = field(default_factory=list)

    def costs(self) -> np.ndarray:
        return np.array([r.cost for r in self.records])


def init_params(config: ExperimentConfig, n_params: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([config.seed, 0]))
    if config.init == "uniform":
        return rng.uniform(-np.pi, np.pi, size=n_params)
    if config.init == "normal":
        return rng.normal(0.0, np.pi, size=n_params)
    return np.zeros(n_params)


class JsonLinesSink:
    """Writes records, prune events and the summary as one JSON object per line."""

    def __init__(self, fh):
        self.fh = fh

    def _write(self, obj):
        self.fh.write(json.dumps(obj) + "\n")
        self.fh.flush()

    def record(self, rec: TrainRecord):
        self._write(rec.to_dict())

    def event(self, ev):
        self._write({"v": SCHEMA_VERSION, "kind": "prune_event", **ev.to_dict()})

    def summary(self, summary: RunSummary):
        self._write(summary.to_dict())


def train(task: Task, config: ExperimentConfig, pruner: QAdaPrune | None = None, sink=None,
          keep_history: bool = False) -> RunResult:
    """Run the optimization loop; ``pruner=None`` trains without any pruning hook.

    Per step: cost and shift-rule gradient over live slots, ``pruner.observe``,
    optimizer update with the freeze mask, re-pinning of frozen slots.
    Stops at the step budget or once every slot is frozen.
    """
    n = task.n_params
    params = init_params(config, n)
    optimizer = make_optimizer(config.optimizer, n)
    frozen = np.zeros(n, dtype=bool)
    records, events, history = [], [], []
    evaluations = 0
    stopped = "budget"
    start = time.perf_counter()

    step = 0
    costs = task.step_costs()
    pending = next(costs, None)
    while pending is not None:
        epoch, cost = pending
        t0 = time.perf_counter()
        value, expvals = cost.evaluate(params, key=(step, 0, 0))
        result = param_shift_grad(cost, params, frozen, step=step, base=expvals)
        evaluations += 1 + result.evals_used
        if keep_history:
            history.append({"step": step, "params": params.copy(), "grad": result.grad.copy(),
                            "frozen": frozen.copy()})
        event = None
        if pruner is not None:
            event = pruner.observe(result.grad, params)
            frozen = pruner.frozen
        params = optimizer.step(params, result.grad, frozen)
        if pruner is not None:
            params = pruner.apply_freeze(params)
        if event is not None:
            events.append(event)
            if sink is not None:
                sink.event(event)

        pending = next(costs, None)
        rec = TrainRecord(
            step=step,
            cost=float(value),
            grad_norm=result.norm,
            n_frozen=int(frozen.sum()),
            pruning_ratio=float(frozen.mean()),
            evaluations=evaluations,
            wall_ms=(time.perf_counter() - t0) * 1e3,
        )
        if config.record_snapshots and pruner is not None:
            rec.tau = pruner.state.tau.tolist()
            rec.accum = pruner.state.accum.tolist()
        all_frozen = bool(frozen.all())
        if pending is None or pending[0] != epoch or all_frozen:
            metrics = task.epoch_metrics(params)
            if metrics:
                rec.epoch = int(epoch)
                rec.val_accuracy = metrics.get("val_accuracy")
        if all_frozen:
            rec.terminal = True
            stopped = "all_frozen"
        records.append(rec)
        if sink is not None:
            sink.record(rec)
        step += 1
        if all_frozen:
            break

    final = task.final_metrics(params)
    summary = RunSummary(
        experiment=config.experiment,
        final_cost=float(final["final_cost"]),
        total_steps=step,
        pruning_ratio=float(frozen.mean()),
        n_frozen=int(frozen.sum()),
        n_params=n,
        total_evaluations=evaluations,
        circuit_runs=task.counter.circuit_runs,
        wall_ms=(time.perf_counter() - start) * 1e3,
        stopped=stopped,
        final_accuracy=final.get("final_accuracy"),
        train_accuracy=final.get("train_accuracy"),
        final_energy=final.get("final_energy"),
        exact_energy=final.get("exact_energy"),
    )
    if sink is not None:
        sink.summary(summary)
    return RunResult(config, records, summary, params, events, history)


def run_experiment(config: ExperimentConfig, sink=None, keep_history: bool = False) -> RunResult:
    """Build the task for ``config`` and train it with a QAdaPrune pruner attached."""
    task = build_task(config)
    pruner = QAdaPrune(task.n_params, config.prune, seed=config.seed)
    return train(task, config, pruner, sink, keep_history)
