import numpy as np
import pytest

from qadaprune import (
    AnsatzFamily,
    AnsatzSpec,
    CircuitOp,
    Feature,
    Fixed,
    GateKind,
    InputError,
    Param,
    ParamCircuit,
    PauliSum,
    apply_gate,
    bind_and_run,
    build_hardware_efficient,
    build_iris_qnn,
    build_mnist_qnn,
    build_vqe_custom,
    init_basis_state,
    zero_state,
)
from qadaprune.circuits import HF_STATE

from .oracle import run_circuit

RX, RY, RZ, RZZ, CZ, CNOT = GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.RZZ, GateKind.CZ, GateKind.CNOT


def ops_of(circuit):
    return [(op.kind, op.targets, op.binding) for op in circuit.ops]


# -- bind_and_run ------------------------------------------------------------

def test_all_fixed_circuit_matches_raw_gates():
    c = ParamCircuit(2, [CircuitOp(RY, (0,), Fixed(0.4)), CircuitOp(CNOT, (0, 1)), CircuitOp(GateKind.X, (1,))])
    raw = apply_gate(apply_gate(apply_gate(zero_state(2), RY, (0,), 0.4), CNOT, (0, 1)), GateKind.X, (1,))
    assert c.n_params == 0
    assert np.allclose(bind_and_run(c, []).amps, raw.amps)


def test_param_and_feature_bindings():
    c = ParamCircuit(1, [CircuitOp(RX, (0,), Param(0))])
    assert np.allclose(bind_and_run(c, [np.pi]).amps, [0, -1j])
    c = ParamCircuit(1, [CircuitOp(RX, (0,), Feature(2))])
    out = bind_and_run(c, [], features=[0, 0, np.pi / 2])
    assert np.allclose(out.amps, [np.cos(np.pi / 4), -1j * np.sin(np.pi / 4)])


def test_bind_and_run_errors():
    c = ParamCircuit(1, [CircuitOp(RX, (0,), Param(0)), CircuitOp(RY, (0,), Feature(1))])
    with pytest.raises(InputError):
        bind_and_run(c, [0.1, 0.2], features=[0, 0])
    with pytest.raises(InputError):
        bind_and_run(c, [0.1])
    with pytest.raises(InputError):
        bind_and_run(c, [0.1], features=[0.0])
    with pytest.raises(InputError):
        bind_and_run(ParamCircuit(1, [CircuitOp(RX, (0,), Param(0))]), [0.1], features=[1.0])
    with pytest.raises(InputError):
        bind_and_run(c, [0.1], features=[0, 0], initial=zero_state(2))


def test_feature_matrix_gives_batch():
    c = build_iris_qnn(2)
    rng = np.random.default_rng(3)
    x = rng.uniform(0, 6, size=(5, 4))
    theta = rng.uniform(-np.pi, np.pi, size=c.n_params)
    batch = bind_and_run(c, theta, x)
    assert batch.batched and batch.batch_size == 5
    for i in range(5):
        assert np.allclose(batch.amps[i], bind_and_run(c, theta, x[i]).amps)


@pytest.mark.parametrize("builder", [
    lambda: build_hardware_efficient(3, 2),
    lambda: build_iris_qnn(2),
    lambda: build_mnist_qnn(2),
    lambda: build_vqe_custom(1),
])
def test_builders_match_dense_oracle(builder):
    c = builder()
    rng = np.random.default_rng(0)
    theta = rng.uniform(-np.pi, np.pi, c.n_params)
    x = rng.uniform(0, np.pi, c.n_features) if c.n_features else None
    assert np.allclose(bind_and_run(c, theta, x).amps, run_circuit(c, theta, x), atol=1e-12)


# -- slot audit ----------------------------------------------------------------

def test_slot_audit():
    with pytest.raises(InputError):
        ParamCircuit(1, [CircuitOp(RX, (0,), Param(0)), CircuitOp(RY, (0,), Param(0))])
    with pytest.raises(InputError):
        ParamCircuit(1, [CircuitOp(RX, (0,), Param(1))])
    with pytest.raises(InputError):
        ParamCircuit(2, [CircuitOp(CZ, (0, 1), Param(0))])
    with pytest.raises(InputError):
        ParamCircuit(2, [CircuitOp(RX, (2,), Param(0))])


@pytest.mark.parametrize("c", [
    build_hardware_efficient(4, 3), build_iris_qnn(5), build_mnist_qnn(3), build_vqe_custom(2),
])
def test_n_params_counts_param_bindings(c):
    slots = [op.binding.slot for op in c.ops if isinstance(op.binding, Param)]
    assert sorted(slots) == list(range(c.n_params))


def test_zero_angles_on_zero_state_is_identity():
    for c in (build_hardware_efficient(3, 2), build_iris_qnn(3)):
        x = np.zeros(c.n_features) if c.n_features else None
        assert np.allclose(bind_and_run(c, np.zeros(c.n_params), x).amps, zero_state(c.n_qubits).amps)


# -- golden structures -----------------------------------------------------------

def test_hardware_efficient_structure():
    c = build_hardware_efficient(2, 1)
    assert c.n_params == 4 and c.gate_counts()[CZ] == 1
    assert build_hardware_efficient(8, 2).n_params == 32
    c = build_hardware_efficient(4, 2)
    layer = [(RX, (q,), Param(2 * q)) if i == 0 else (RY, (q,), Param(2 * q + 1))
             for q in range(4) for i in range(2)]
    layer += [(CZ, p, Fixed()) for p in [(0, 1), (1, 2), (2, 3)]]
    second = [(k, t, Param(b.slot + 8) if isinstance(b, Param) else b) for k, t, b in layer]
    assert ops_of(c) == layer + second
    with pytest.raises(InputError):
        build_hardware_efficient(1, 1)


def test_iris_qnn_structure():
    c = build_iris_qnn(4)
    assert c.n_params == 16 and c.n_features == 4
    assert build_iris_qnn(8).n_params == 32
    expected = [(RX, (j,), Feature(j)) for j in range(4)]
    for layer in range(4):
        expected += [(RY, (q,), Param(4 * layer + q)) for q in range(4)]
        expected += [(CNOT, p, Fixed()) for p in [(0, 1), (1, 2), (2, 3)]]
    assert ops_of(c) == expected
    with pytest.raises(InputError):
        build_iris_qnn(17)


def test_mnist_qnn_structure():
    c = build_mnist_qnn(2)
    assert c.n_params == 14 and c.n_features == 16
    expected = []
    for q in range(4):
        expected += [(k, (q,), Feature(4 * q + i)) for i, k in enumerate([RY, RX, RZ, RY])]
    for layer in range(2):
        base = 7 * layer
        expected += [(RZZ, p, Param(base + i)) for i, p in enumerate([(0, 1), (1, 2), (2, 3)])]
        expected += [(RY, (q,), Param(base + 3 + q)) for q in range(4)]
    assert ops_of(c) == expected


def test_mnist_examples():
    c = build_mnist_qnn(1)
    out = bind_and_run(c, np.zeros(7), np.zeros(16))
    for q in range(4):
        z = PauliSum.single("I" * q + "Z" + "I" * (3 - q))
        assert z.expectation(out) == pytest.approx(1.0)


def test_vqe_custom_structure():
    c = build_vqe_custom(2)
    assert c.n_params == 16
    assert ops_of(c) == ops_of(build_hardware_efficient(4, 2))
    hf = init_basis_state(4, HF_STATE)
    assert np.allclose(bind_and_run(c, np.zeros(16), initial=hf).amps, hf.amps)


def test_ansatz_spec():
    assert AnsatzSpec("mnist_qnn", 4, 2).build().n_params == 14
    assert AnsatzSpec(AnsatzFamily.HARDWARE_EFFICIENT, 6, 2).build().n_qubits == 6
    with pytest.raises(InputError):
        AnsatzSpec("mnist_qnn", 5, 2)
    with pytest.raises(InputError):
        AnsatzSpec("iris_qnn", 4, 0)
    with pytest.raises(ValueError):
        AnsatzSpec("nope", 4, 1)
