import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qadaprune import (
    CircuitOp,
    ExpectationCost,
    GateKind,
    InputError,
    NumericError,
    Param,
    ParamCircuit,
    PauliSum,
    build_hardware_efficient,
    build_mnist_qnn,
    finite_diff_grad,
    param_shift_grad,
)
from qadaprune.gradients import EvalCounter, shift_key
from qadaprune.harness.gradcheck import random_circuit, random_pauli_sum
from qadaprune.harness.losses import BCELoss, L2Loss
from qadaprune.harness.tasks import l2_readout, z_readouts
from qadaprune.circuits import build_iris_qnn

from .oracle import pauli_matrix, run_circuit


def cos_cost(**kw):
    c = ParamCircuit(1, [CircuitOp(GateKind.RX, (0,), Param(0))])
    return ExpectationCost(c, PauliSum.single("Z"), **kw)


def test_shift_rule_examples():
    cost = cos_cost()
    assert param_shift_grad(cost, [np.pi / 2]).grad[0] == pytest.approx(-1.0, abs=1e-14)
    assert param_shift_grad(cost, [0.0]).grad[0] == pytest.approx(0.0, abs=1e-14)


def test_finite_difference_examples():
    assert finite_diff_grad(cos_cost(), [np.pi / 2])[0] == pytest.approx(-1.0, abs=1e-9)
    assert np.array_equal(finite_diff_grad(lambda p: 3.0, np.zeros(4)), np.zeros(4))
    with pytest.raises(InputError):
        finite_diff_grad(cos_cost(), [0.0], h=0)


def dense_cost(circuit, terms):
    # independent oracle cost: Kronecker-built gates and observable
    M = pauli_matrix(terms, circuit.n_qubits)

    def f(p):
        psi = run_circuit(circuit, p)
        return float(np.real(np.conj(psi) @ M @ psi))
    return f


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**31), n=st.integers(1, 4), layers=st.integers(1, 3))
def test_shift_rule_matches_oracle_finite_differences(seed, n, layers):
    rng = np.random.default_rng(seed)
    circuit = random_circuit(n, layers, rng)
    obs = random_pauli_sum(n, 3, rng)
    theta = rng.uniform(-np.pi, np.pi, circuit.n_params)
    ps = param_shift_grad(ExpectationCost(circuit, obs), theta).grad
    fd = finite_diff_grad(dense_cost(circuit, obs.terms), theta)
    assert np.max(np.abs(ps - fd)) < 1e-4


@pytest.mark.parametrize("make", ["l2", "bce"])
def test_chained_losses_match_finite_differences(make):
    rng = np.random.default_rng(5)
    if make == "l2":
        c = build_iris_qnn(2)
        x = rng.uniform(0, 2 * np.pi, (6, 4))
        cost = ExpectationCost(c, l2_readout(4), L2Loss(rng.choice([-1, 1], 6)), features=x)
    else:
        c = build_mnist_qnn(2)
        x = rng.uniform(0, np.pi, (6, 16))
        cost = ExpectationCost(c, z_readouts(4), BCELoss(rng.integers(0, 2, 6)), features=x)
    theta = rng.uniform(-np.pi, np.pi, c.n_params)
    err = np.abs(param_shift_grad(cost, theta).grad - finite_diff_grad(cost, theta))
    assert err.max() < 1e-4


def test_frozen_mask():
    cost = ExpectationCost(build_hardware_efficient(3, 1), PauliSum.single("ZXI"))
    theta = np.linspace(-1, 1, 6)
    full = param_shift_grad(cost, theta)
    assert full.evals_used == 12
    frozen = np.array([True, False, False, True, True, False])
    part = param_shift_grad(cost, theta, frozen)
    assert np.all(part.grad[frozen] == 0.0)
    assert np.array_equal(part.grad[~frozen], full.grad[~frozen])
    assert part.evals_used == full.evals_used - 2 * frozen.sum()
    with pytest.raises(InputError):
        param_shift_grad(cost, theta, frozen[:3])


def test_counter_tracks_evaluations():
    counter = EvalCounter()
    c = build_iris_qnn(1)
    x = np.ones((7, 4))
    cost = ExpectationCost(c, l2_readout(4), L2Loss(np.ones(7)), features=x, counter=counter)
    res = param_shift_grad(cost, np.zeros(4))
    # one base evaluation for the nonlinear loss plus two per slot
    assert counter.evaluations == 1 + res.evals_used == 9
    assert counter.circuit_runs == 7 * 9


def test_deterministic_with_shots():
    cost = cos_cost(shots=100, seed=3)
    a = param_shift_grad(cost, [0.4], step=7).grad
    b = param_shift_grad(cos_cost(shots=100, seed=3), [0.4], step=7).grad
    assert np.array_equal(a, b)
    assert not np.array_equal(a, param_shift_grad(cost, [0.4], step=8).grad)


def test_shift_keys_distinct():
    keys = {shift_key(s, k, sign) for s in range(3) for k in range(4) for sign in (1, -1)}
    assert len(keys) == 24 and all(k[1] != 0 for k in keys)


def test_shot_gradient_unbiased():
    theta = 0.9
    shots, seeds = 200, 300
    cost = cos_cost(shots=shots, seed=0)
    vals = np.array([param_shift_grad(cost, [theta], step=s).grad[0] for s in range(seeds)])
    # each shifted estimate has variance (1 - cos^2) / shots
    var = 0.25 * (1 - math.cos(theta + math.pi / 2) ** 2 + 1 - math.cos(theta - math.pi / 2) ** 2) / shots
    assert abs(vals.mean() + math.sin(theta)) < 4 * math.sqrt(var / seeds)


def test_non_finite_cost_raises_with_slot():
    class Bad:
        linear = False

        def value(self, e):
            return float("nan")

        def grad(self, e):
            return np.full(np.shape(e), np.nan)

    cost = ExpectationCost(build_hardware_efficient(2, 1), PauliSum.single("ZZ"), Bad())
    with pytest.raises(NumericError) as info:
        param_shift_grad(cost, np.zeros(4), [True, False, False, False])
    assert info.value.slot == 1
