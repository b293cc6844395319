"""Losses and readouts for the three experiment families.

Loss classes follow the ``value(E)`` / ``grad(E)`` protocol expected by
``ExpectationCost``; ``E`` is the ``(M, K)`` array of expectation values.
"""
from __future__ import annotations

import numpy as np

from ..errors import InputError
from ..gradients import LinearReadout
from ..simulator import Statevector, ZeroProjector

PROB_CLAMP = 1e-12


def loss_l2(expectation_value: float, label: int) -> float:
    """Distance between a scalar prediction and a +-1 label, ``|f - y|``."""
    if label not in (-1, 1):
        raise InputError(f"label must be -1 or +1, got {label!r}")
    return abs(float(expectation_value) - label)


def loss_bce(probs, label: int) -> float:
    """Negative log-likelihood of ``label`` under ``probs[1]``."""
    if label not in (0, 1):
        raise InputError(f"label must be 0 or 1, got {label!r}")
    p = float(np.clip(probs[1], PROB_CLAMP, 1 - PROB_CLAMP))
    return -(label * np.log(p) + (1 - label) * np.log(1 - p))


def mnist_readout(z_expectations) -> np.ndarray:
    """Four ``<Z_q>`` values -> class probabilities.

    Logits are ``(e0 + e1, e2 + e3)``, passed through a 2-way softmax. Works on
    a single 4-vector or on an ``(M, 4)`` array.
    """
    z = np.asarray(z_expectations, dtype=np.float64)
    logits = np.stack([z[..., 0] + z[..., 1], z[..., 2] + z[..., 3]], axis=-1)
    logits = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(logits)
    return e / e.sum(axis=-1, keepdims=True)


def identity_cost(state: Statevector):
    """``1 - |<0...0|psi>|^2``; zero iff the circuit acts as identity on ``|0>``."""
    return 1.0 - ZeroProjector(state.n_qubits).expectation(state)


def identity_loss() -> LinearReadout:
    """Loss turning the ``ZeroProjector`` expectation into ``identity_cost``."""
    return LinearReadout(scale=-1.0, offset=1.0)


class L2Loss:
    """Mean over samples of ``|f_i - y_i|``, ``f_i`` read from column 0."""

    linear = False

    def __init__(self, labels):
        self.labels = np.asarray(labels, dtype=np.float64)

    def value(self, expvals) -> float:
        return float(np.mean(np.abs(expvals[:, 0] - self.labels)))

    def grad(self, expvals) -> np.ndarray:
        out = np.zeros(np.shape(expvals))
        out[:, 0] = np.sign(expvals[:, 0] - self.labels) / self.labels.size
        return out


class BCELoss:
    """Summed binary cross entropy of ``mnist_readout`` against 0/1 labels."""

    linear = False

    def __init__(self, labels):
        self.labels = np.asarray(labels, dtype=np.float64)

    def value(self, expvals) -> float:
        p = np.clip(mnist_readout(expvals)[:, 1], PROB_CLAMP, 1 - PROB_CLAMP)
        y = self.labels
        return float(-np.sum(y * np.log(p) + (1 - y) * np.log(1 - p)))

    def grad(self, expvals) -> np.ndarray:
        # d/d(z1 - z0) of the NLL is p - y; z0 = e0 + e1, z1 = e2 + e3.
        # The clamp is never active: |z1 - z0| <= 4.
        r = mnist_readout(expvals)[:, 1] - self.labels
        return np.column_stack([-r, -r, r, r])
