"""Cost construction for each experiment family."""
from __future__ import annotations

import numpy as np

from ..circuits import AnsatzFamily, ParamCircuit, bind_and_run
from ..errors import InputError
from ..gradients import EvalCounter, ExpectationCost
from ..simulator import PauliSum, ZeroProjector
from .config import ExperimentConfig, resolve_path
from .data import Dataset, load_dataset_csv, load_hamiltonian
from .losses import BCELoss, L2Loss, identity_loss, mnist_readout
from .vqe import exact_diag, hf_state


def l2_readout(n_qubits: int) -> PauliSum:
    """Z on the last qubit, where the CNOT chain gathers every feature."""
    return PauliSum.single("I" * (n_qubits - 1) + "Z")


def z_readouts(n_qubits: int) -> list:
    return [PauliSum.single("I" * q + "Z" + "I" * (n_qubits - q - 1)) for q in range(n_qubits)]


def predict_accuracy(circuit: ParamCircuit, params, dataset: Dataset, task: str) -> float:
    """Fraction of correct predictions from exact expectations.

    ``l2``: sign of the readout, exact zeros counted as +1. ``bce``: argmax of
    ``mnist_readout``.
    """
    if len(dataset) == 0:
        raise InputError("empty dataset")
    state = bind_and_run(circuit, params, dataset.features)
    if task == "l2":
        f = np.atleast_1d(l2_readout(circuit.n_qubits).expectation(state))
        pred = np.where(f >= 0, 1, -1)
    elif task == "bce":
        z = np.column_stack([np.atleast_1d(o.expectation(state)) for o in z_readouts(circuit.n_qubits)])
        pred = np.argmax(mnist_readout(z), axis=1)
    else:
        raise InputError(f"unknown task {task!r}")
    return float(np.mean(pred == dataset.labels))


class Task:
    """One experiment: its circuit, the cost of each optimizer step, and metrics."""

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.circuit = config.ansatz.build()
        self.counter = EvalCounter()

    @property
    def n_params(self) -> int:
        return self.circuit.n_params

    def step_costs(self):
        """Yield ``(epoch, cost)`` once per optimizer step."""
        raise NotImplementedError

    def epoch_metrics(self, params) -> dict:
        return {}

    def final_metrics(self, params) -> dict:
        raise NotImplementedError


class _SingleCostTask(Task):
    cost: ExpectationCost

    def step_costs(self):
        for t in range(self.config.steps):
            yield t, self.cost

    def analytic_cost(self, params) -> float:
        exact = ExpectationCost(self.circuit, self.cost.observables, self.cost.loss,
                                self.cost.features, self.cost.initial)
        return exact(params)


class BarrenTask(_SingleCostTask):
    """Learn the identity: minimize ``1 - |<0|U(theta)|0>|^2``."""

    def __init__(self, config):
        super().__init__(config)
        if config.ansatz.family is not AnsatzFamily.HARDWARE_EFFICIENT:
            raise InputError("the barren-plateau study uses the hardware-efficient ansatz")
        n = self.circuit.n_qubits
        self.cost = ExpectationCost(self.circuit, ZeroProjector(n), identity_loss(),
                                    shots=config.shots, seed=config.seed, counter=self.counter)

    def final_metrics(self, params):
        return {"final_cost": self.analytic_cost(params)}


class VqeTask(_SingleCostTask):
    def __init__(self, config):
        super().__init__(config)
        self.hamiltonian = load_hamiltonian(resolve_path(config.hamiltonian))
        if self.hamiltonian.n_qubits != self.circuit.n_qubits:
            raise InputError("Hamiltonian and ansatz qubit counts differ")
        self.initial = hf_state(self.circuit.n_qubits)
        self.exact_energy = exact_diag(self.hamiltonian)
        self.cost = ExpectationCost(self.circuit, self.hamiltonian, initial=self.initial,
                                    shots=config.shots, seed=config.seed, counter=self.counter)

    def final_metrics(self, params):
        energy = self.analytic_cost(params)
        return {"final_cost": energy, "final_energy": energy, "exact_energy": self.exact_energy}


class ClassifyTask(Task):
    def __init__(self, config):
        super().__init__(config)
        task = config.task
        family = config.ansatz.family
        if task == "l2" and family is not AnsatzFamily.IRIS_QNN:
            raise InputError("the l2 task uses the iris_qnn ansatz")
        if task == "bce" and family is not AnsatzFamily.MNIST_QNN:
            raise InputError("the bce task uses the mnist_qnn ansatz")
        data = load_dataset_csv(resolve_path(config.dataset), "pm1" if task == "l2" else "01")
        if data.dim < self.circuit.n_features:
            raise InputError(f"dataset has {data.dim} features, circuit needs {self.circuit.n_features}")
        if config.scale_features:
            data = data.minmax_scaled()
        self.train_set, self.val_set = data.split(config.train_fraction, config.split_seed, config.train_size)
        n = self.circuit.n_qubits
        self.observables = [l2_readout(n)] if task == "l2" else z_readouts(n)

    def _cost(self, subset: Dataset) -> ExpectationCost:
        loss = L2Loss(subset.labels) if self.config.task == "l2" else BCELoss(subset.labels)
        return ExpectationCost(self.circuit, self.observables, loss, features=subset.features,
                               shots=self.config.shots, seed=self.config.seed, counter=self.counter)

    def step_costs(self):
        cfg = self.config
        if cfg.task == "l2":
            cost = self._cost(self.train_set)
            for t in range(cfg.steps):
                yield t, cost
            return
        m = len(self.train_set)
        for epoch in range(cfg.epochs):
            order = np.random.default_rng(np.random.SeedSequence([cfg.seed, 1, epoch])).permutation(m)
            for start in range(0, m, cfg.batch_size):
                yield epoch, self._cost(self.train_set.subset(np.sort(order[start:start + cfg.batch_size])))

    def epoch_metrics(self, params):
        return {"val_accuracy": predict_accuracy(self.circuit, params, self.val_set, self.config.task)}

    def final_metrics(self, params):
        exact = ExpectationCost(self.circuit, self.observables,
                                L2Loss(self.train_set.labels) if self.config.task == "l2"
                                else BCELoss(self.train_set.labels),
                                features=self.train_set.features)
        return {
            "final_cost": exact(params),
            "final_accuracy": predict_accuracy(self.circuit, params, self.val_set, self.config.task),
            "train_accuracy": predict_accuracy(self.circuit, params, self.train_set, self.config.task),
        }


def build_task(config: ExperimentConfig) -> Task:
    if config.experiment == "barren":
        return BarrenTask(config)
    if config.experiment == "vqe":
        return VqeTask(config)
    if config.experiment == "classify":
        return ClassifyTask(config)
    raise InputError(f"{config.experiment} is not a training experiment")
