"""Parameterized circuit IR and the ansatz builders used by the experiments."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .simulator import GateKind, Statevector, _apply, _check_gate, zero_state


@dataclass(frozen=True)
class Fixed:
    """Constant angle (``None`` for non-rotation gates)."""

    angle: float | None = None


@dataclass(frozen=True)
class Param:
    """Trainable slot."""

    slot: int


@dataclass(frozen=True)
class Feature:
    """Angle read from component ``component`` of the input vector."""

    component: int


@dataclass(frozen=True)
class CircuitOp:
    kind: GateKind
    targets: tuple
    binding: Fixed | Param | Feature = Fixed()


class ParamCircuit:
    """Ordered gate list with trainable slots ``0..n_params-1``, each used once.

    Immutable after construction.
    """

    def __init__(self, n_qubits: int, ops):
        self.n_qubits = int(n_qubits)
        ops = tuple(ops)
        slots = []
        components = []
        for op in ops:
            b = op.binding
            angle = b.angle if isinstance(b, Fixed) else 0.0
            _check_gate(op.kind, op.targets, angle, self.n_qubits)
            if isinstance(b, Param):
                slots.append(b.slot)
            elif isinstance(b, Feature):
                components.append(b.component)
        if len(set(slots)) != len(slots):
            raise InputError("a trainable slot is bound more than once")
        if sorted(slots) != list(range(len(slots))):
            raise InputError(f"trainable slots must be 0..{len(slots) - 1}, got {sorted(slots)}")
        if any(c < 0 for c in components):
            raise InputError("negative feature component")
        self.ops = ops
        self.n_params = len(slots)
        self.n_features = max(components) + 1 if components else 0

    def __repr__(self):
        return f"ParamCircuit(n_qubits={self.n_qubits}, ops={len(self.ops)}, n_params={self.n_params})"

    def gate_counts(self) -> dict:
        counts = {}
        for op in self.ops:
            counts[op.kind] = counts.get(op.kind, 0) + 1
        return counts

    def run(self, params, features=None, initial: Statevector | None = None) -> Statevector:
        return bind_and_run(self, params, features, initial)


def bind_and_run(circuit: ParamCircuit, params, features=None, initial: Statevector | None = None) -> Statevector:
    """Resolve bindings and apply the ops in order.

    ``features`` may be a vector (one input) or an ``(M, d)`` matrix, in which
    case the result is a batch of ``M`` states. ``initial`` defaults to
    ``|0...0>``.
    """
    params = np.asarray(params, dtype=np.float64).reshape(-1)
    if params.size != circuit.n_params:
        raise InputError(f"expected {circuit.n_params} parameters, got {params.size}")
    if initial is None:
        initial = zero_state(circuit.n_qubits)
    if initial.n_qubits != circuit.n_qubits:
        raise InputError(f"initial state has {initial.n_qubits} qubits, circuit {circuit.n_qubits}")

    batched = initial.batched
    if circuit.n_features:
        if features is None:
            raise InputError("circuit has feature bindings but no features were given")
        features = np.asarray(features, dtype=np.float64)
        if features.ndim == 1:
            features = features[None, :]
        else:
            batched = True
        if features.ndim != 2 or features.shape[1] < circuit.n_features:
            raise InputError(f"features need at least {circuit.n_features} components")
        if batched:
            initial = initial.broadcast(features.shape[0])
    elif features is not None:
        raise InputError("circuit has no feature bindings but features were given")

    psi = initial.tensor()
    for op in circuit.ops:
        b = op.binding
        if isinstance(b, Param):
            angle = params[b.slot]
        elif isinstance(b, Feature):
            col = features[:, b.component]
            angle = col if batched else col[0]
        else:
            angle = b.angle
        psi = _apply(psi, op.kind, op.targets, angle)
    return Statevector.from_tensor(psi, batched=batched)


class AnsatzFamily(enum.Enum):
    HARDWARE_EFFICIENT = "hardware_efficient"
    IRIS_QNN = "iris_qnn"
    MNIST_QNN = "mnist_qnn"
    VQE_CUSTOM = "vqe_custom"


@dataclass(frozen=True)
class AnsatzSpec:
    family: AnsatzFamily
    n_qubits: int
    n_layers: int

    def __post_init__(self):
        object.__setattr__(self, "family", AnsatzFamily(self.family))
        if self.n_layers < 1:
            raise InputError("n_layers must be >= 1")
        if self.family is AnsatzFamily.MNIST_QNN and self.n_qubits != 4:
            raise InputError("the MNIST QNN is defined on 4 qubits")
        if self.family in (AnsatzFamily.IRIS_QNN, AnsatzFamily.VQE_CUSTOM) and self.n_qubits != 4:
            raise InputError(f"{self.family.value} is defined on 4 qubits")

    def build(self) -> ParamCircuit:
        if self.family is AnsatzFamily.HARDWARE_EFFICIENT:
            return build_hardware_efficient(self.n_qubits, self.n_layers)
        if self.family is AnsatzFamily.IRIS_QNN:
            return build_iris_qnn(self.n_layers, self.n_qubits)
        if self.family is AnsatzFamily.MNIST_QNN:
            return build_mnist_qnn(self.n_layers)
        return build_vqe_custom(self.n_layers, self.n_qubits)


def _chain(n_qubits):
    return [(q, q + 1) for q in range(n_qubits - 1)]


def _hea_layers(n_qubits, n_layers, slot=0):
    ops = []
    for _ in range(n_layers):
        for q in range(n_qubits):
            ops.append(CircuitOp(GateKind.RX, (q,), Param(slot)))
            ops.append(CircuitOp(GateKind.RY, (q,), Param(slot + 1)))
            slot += 2
        ops.extend(CircuitOp(GateKind.CZ, pair) for pair in _chain(n_qubits))
    return ops


def build_hardware_efficient(n_qubits: int, n_layers: int) -> ParamCircuit:
    """RX, RY on every qubit, then a CZ chain; repeated ``n_layers`` times.

    Slots run qubit-major inside a layer: layer l, qubit q uses slots
    ``2*(l*n + q)`` (RX) and ``2*(l*n + q) + 1`` (RY).
    """
    if n_qubits < 2:
        raise InputError("the hardware-efficient ansatz needs at least 2 qubits")
    if n_layers < 1:
        raise InputError("n_layers must be >= 1")
    return ParamCircuit(n_qubits, _hea_layers(n_qubits, n_layers))


def build_iris_qnn(n_layers: int, n_qubits: int = 4) -> ParamCircuit:
    """RX angle embedding of a 4-vector, then layers of RY + CNOT chain.

    The variational block is a stand-in for the undescribed figure: per layer
    one RY per qubit followed by CNOT(0,1), CNOT(1,2), CNOT(2,3).
    """
    if n_qubits != 4:
        raise InputError("the Iris QNN is defined on 4 qubits")
    if not 1 <= n_layers <= 16:
        raise InputError("n_layers must be in [1, 16]")
    ops = [CircuitOp(GateKind.RX, (j,), Feature(j)) for j in range(n_qubits)]
    slot = 0
    for _ in range(n_layers):
        for q in range(n_qubits):
            ops.append(CircuitOp(GateKind.RY, (q,), Param(slot)))
            slot += 1
        ops.extend(CircuitOp(GateKind.CNOT, pair) for pair in _chain(n_qubits))
    return ParamCircuit(n_qubits, ops)


def build_mnist_qnn(n_layers: int) -> ParamCircuit:
    """4-qubit image classifier.

    Encoding: qubit q gets RY, RX, RZ, RY with pixels 4q..4q+3 (row q of a
    row-major 4x4 image). Each variational layer is RZZ on (0,1), (1,2), (2,3)
    then RY on every qubit, 7 slots per layer.
    """
    if n_layers < 1:
        raise InputError("n_layers must be >= 1")
    ops = []
    for q in range(4):
        for offset, kind in enumerate((GateKind.RY, GateKind.RX, GateKind.RZ, GateKind.RY)):
            ops.append(CircuitOp(kind, (q,), Feature(4 * q + offset)))
    slot = 0
    for _ in range(n_layers):
        for pair in _chain(4):
            ops.append(CircuitOp(GateKind.RZZ, pair, Param(slot)))
            slot += 1
        for q in range(4):
            ops.append(CircuitOp(GateKind.RY, (q,), Param(slot)))
            slot += 1
    return ParamCircuit(4, ops)


def build_vqe_custom(n_layers: int, n_qubits: int = 4) -> ParamCircuit:
    """Hardware-efficient layers meant to act on the HF state ``|1100>``.

    Stands in for the custom (non-UCCSD) VQE ansatz, whose layout is not
    given; pair it with ``HF_STATE`` as the initial state.
    """
    if n_layers < 1:
        raise InputError("n_layers must be >= 1")
    return build_hardware_efficient(n_qubits, n_layers)


HF_STATE = "1100"
