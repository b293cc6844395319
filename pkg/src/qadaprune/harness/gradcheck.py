"""Randomized comparison of shift-rule gradients with central differences."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..circuits import (
    CircuitOp,
    Fixed,
    Param,
    ParamCircuit,
    build_hardware_efficient,
    build_iris_qnn,
    build_mnist_qnn,
    build_vqe_custom,
)
from ..gradients import ExpectationCost, finite_diff_grad, param_shift_grad
from ..simulator import GateKind, PauliSum, ZeroProjector
from .data import data_path, load_hamiltonian
from .losses import BCELoss, L2Loss, identity_loss
from .tasks import l2_readout, z_readouts
from .vqe import hf_state

FAMILIES = ("hardware_efficient", "vqe_custom", "iris_qnn", "mnist_qnn", "random")


@dataclass
class GradCheckTrial:
    index: int
    family: str
    loss: str
    n_qubits: int
    n_layers: int
    n_params: int
    max_abs_error: float

    def to_dict(self) -> dict:
        return {"v": 1, "kind": "gradcheck", **self.__dict__}


def random_pauli_sum(n_qubits: int, n_terms: int, rng) -> PauliSum:
    labels = ["".join(rng.choice(list("IXYZ"), size=n_qubits)) for _ in range(n_terms)]
    return PauliSum(n_qubits, tuple(zip(rng.normal(size=n_terms), labels)))


def random_circuit(n_qubits: int, n_layers: int, rng) -> ParamCircuit:
    """Layers of random trainable rotations (RX/RY/RZ/RZZ) and fixed gates."""
    ops = []
    slot = 0
    for _ in range(n_layers):
        for q in range(n_qubits):
            kind = rng.choice([GateKind.RX, GateKind.RY, GateKind.RZ])
            ops.append(CircuitOp(kind, (q,), Param(slot)))
            slot += 1
        if n_qubits > 1:
            a, b = rng.choice(n_qubits, size=2, replace=False)
            ops.append(CircuitOp(GateKind.RZZ, (int(a), int(b)), Param(slot)))
            slot += 1
            c, d = rng.choice(n_qubits, size=2, replace=False)
            fixed = rng.choice([GateKind.CNOT, GateKind.CZ])
            ops.append(CircuitOp(fixed, (int(c), int(d)), Fixed()))
        ops.append(CircuitOp(GateKind.X, (int(rng.integers(n_qubits)),), Fixed()))
        ops.append(CircuitOp(GateKind.RY, (int(rng.integers(n_qubits)),), Fixed(float(rng.uniform(-np.pi, np.pi)))))
    return ParamCircuit(n_qubits, ops)


def random_problem(family: str, rng, n_samples: int = 5):
    """Return ``(loss_name, n_layers, cost)`` for a random instance of ``family``."""
    layers = int(rng.integers(1, 4))
    if family == "hardware_efficient":
        n = int(rng.integers(2, 5))
        circuit = build_hardware_efficient(n, layers)
        if rng.random() < 0.5:
            return "identity", layers, ExpectationCost(circuit, ZeroProjector(n), identity_loss())
        return "expectation", layers, ExpectationCost(circuit, random_pauli_sum(n, 4, rng))
    if family == "vqe_custom":
        circuit = build_vqe_custom(layers)
        ham = load_hamiltonian(data_path("h2_0.7414.ham"))
        return "expectation", layers, ExpectationCost(circuit, ham, initial=hf_state(4))
    if family == "iris_qnn":
        circuit = build_iris_qnn(layers)
        x = rng.uniform(0, 2 * np.pi, size=(n_samples, 4))
        y = rng.choice([-1, 1], size=n_samples)
        return "l2", layers, ExpectationCost(circuit, l2_readout(4), L2Loss(y), features=x)
    if family == "mnist_qnn":
        circuit = build_mnist_qnn(layers)
        x = rng.uniform(0, np.pi, size=(n_samples, 16))
        y = rng.integers(0, 2, size=n_samples)
        return "bce", layers, ExpectationCost(circuit, z_readouts(4), BCELoss(y), features=x)
    n = int(rng.integers(1, 5))
    circuit = random_circuit(n, layers, rng)
    return "expectation", layers, ExpectationCost(circuit, random_pauli_sum(n, 3, rng))


def run_gradcheck(trials: int = 50, seed: int = 0, h: float = 1e-5, sink=None) -> list:
    """Cycle through the ansatz families; one random instance and parameter draw per trial."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(trials):
        family = FAMILIES[i % len(FAMILIES)]
        loss_name, layers, cost = random_problem(family, rng)
        params = rng.uniform(-np.pi, np.pi, size=cost.n_params)
        ps = param_shift_grad(cost, params).grad
        fd = finite_diff_grad(cost, params, h)
        trial = GradCheckTrial(i, family, loss_name, cost.circuit.n_qubits,
                               layers, cost.n_params, float(np.max(np.abs(ps - fd))))
        out.append(trial)
        if sink is not None:
            sink(trial)
    return out

