"""Parameter-shift gradients, with a central-difference oracle.

Costs are written as ``loss(E)`` where ``E`` is an ``(M, K)`` array of circuit
expectation values (``M`` inputs, ``K`` observables). The shift rule is
applied to every expectation and chained through the loss analytically:

    dC/dtheta_k = sum_ij dloss/dE_ij * c * (E_ij(theta + s e_k) - E_ij(theta - s e_k))

with ``s = pi/2`` and ``c = 1/2``, exact for every gate generated by a
Pauli-type operator with eigenvalues +-1 (RX, RY, RZ, RZZ) as long as each
slot feeds a single gate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import ParamCircuit, bind_and_run
from .errors import InputError, NumericError
from .simulator import Statevector

SHIFT = math.pi / 2
SHIFT_SCALE = 0.5


@dataclass(frozen=True)
class ShiftRule:
    s: float = SHIFT
    c: float = SHIFT_SCALE


@dataclass
class EvalCounter:
    """Counts cost evaluations and the circuit executions behind them."""

    evaluations: int = 0
    circuit_runs: int = 0


class LinearReadout:
    """``offset + scale * sum(E)``; the loss of a plain expectation-value cost."""

    linear = True

    def __init__(self, scale: float = 1.0, offset: float = 0.0):
        self.scale = scale
        self.offset = offset

    def value(self, expvals: np.ndarray) -> float:
        return float(self.offset + self.scale * np.sum(expvals))

    def grad(self, expvals: np.ndarray) -> np.ndarray:
        return np.full(np.shape(expvals), self.scale)


class ExpectationCost:
    """A circuit, its observables, optional inputs, and a loss over the results.

    ``shots=0`` evaluates exact expectations; otherwise every expectation is a
    ``shots``-sample estimate seeded by ``SeedSequence([seed, *key])``, where
    ``key`` is a tuple of non-negative ints identifying the evaluation.
    """

    def __init__(
        self,
        circuit: ParamCircuit,
        observables,
        loss=None,
        features=None,
        initial: Statevector | None = None,
        shots: int = 0,
        seed: int = 0,
        counter: EvalCounter | None = None,
    ):
        if not isinstance(observables, (list, tuple)):
            observables = [observables]
        if shots < 0:
            raise InputError("shots must be >= 0")
        self.circuit = circuit
        self.observables = list(observables)
        self.loss = loss if loss is not None else LinearReadout()
        self.features = None if features is None else np.asarray(features, dtype=np.float64)
        if self.features is not None and self.features.ndim == 1:
            self.features = self.features[None, :]
        self.initial = initial
        self.shots = int(shots)
        self.seed = int(seed)
        self.counter = counter if counter is not None else EvalCounter()

    @property
    def n_params(self) -> int:
        return self.circuit.n_params

    @property
    def output_shape(self) -> tuple:
        m = 1 if self.features is None else self.features.shape[0]
        return (m, len(self.observables))

    def expectations(self, params, key=()) -> np.ndarray:
        state = bind_and_run(self.circuit, params, self.features, self.initial)
        self.counter.evaluations += 1
        self.counter.circuit_runs += state.batch_size
        if self.shots:
            rng = np.random.default_rng(np.random.SeedSequence([self.seed, *key]))
            cols = [obs.sampled_expectation(state, self.shots, rng) for obs in self.observables]
        else:
            cols = [obs.expectation(state) for obs in self.observables]
        return np.column_stack([np.atleast_1d(c) for c in cols])

    def evaluate(self, params, key=()):
        """Return ``(cost, expectations)``."""
        expvals = self.expectations(params, key)
        return self.loss.value(expvals), expvals

    def __call__(self, params, key=()) -> float:
        return self.evaluate(params, key)[0]


@dataclass
class GradResult:
    grad: np.ndarray
    evals_used: int
    frozen: np.ndarray = field(default=None, repr=False)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.grad))


def shift_key(step: int, slot: int, sign: int) -> tuple:
    """Seed key of one shifted evaluation; ``(step, 0, 0)`` is the unshifted cost."""
    return (step, slot + 1, 1 if sign > 0 else 2)


def param_shift_grad(cost: ExpectationCost, params, frozen=None, *, step: int = 0, base=None,
                     rule: ShiftRule = ShiftRule()) -> GradResult:
    """Shift-rule gradient of ``cost`` at ``params``.

    Frozen slots get exactly 0 and cost nothing. ``evals_used`` counts only
    the two shifted evaluations per live slot; for a nonlinear loss the
    expectations at ``params`` are also needed, pass them as ``base`` (the
    caller has usually just computed the cost) or they are evaluated here.
    """
    params = np.asarray(params, dtype=np.float64)
    n = params.size
    frozen = np.zeros(n, dtype=bool) if frozen is None else np.asarray(frozen, dtype=bool)
    if frozen.shape != (n,):
        raise InputError(f"mask length {frozen.size} != {n} parameters")

    if getattr(cost.loss, "linear", False):
        weights = cost.loss.grad(np.zeros(cost.output_shape))
    else:
        if base is None:
            base = cost.expectations(params, key=(step, 0, 0))
        weights = cost.loss.grad(base)

    grad = np.zeros(n)
    used = 0
    for k in np.flatnonzero(~frozen):
        shifted = params.copy()
        shifted[k] = params[k] + rule.s
        plus = cost.expectations(shifted, key=shift_key(step, k, +1))
        shifted[k] = params[k] - rule.s
        minus = cost.expectations(shifted, key=shift_key(step, k, -1))
        used += 2
        g = float(np.sum(weights * (rule.c * (plus - minus))))
        if not math.isfinite(g):
            raise NumericError(f"non-finite gradient for slot {k}", slot=int(k))
        grad[k] = g
    return GradResult(grad, used, frozen.copy())


def finite_diff_grad(cost, params, h: float = 1e-5) -> np.ndarray:
    """Central differences ``(C(theta + h e_k) - C(theta - h e_k)) / 2h``."""
    if h <= 0:
        raise InputError("h must be positive")
    params = np.asarray(params, dtype=np.float64)
    grad = np.zeros(params.size)
    for k in range(params.size):
        up, down = params.copy(), params.copy()
        up[k] += h
        down[k] -= h
        g = (cost(up) - cost(down)) / (2 * h)
        if not math.isfinite(g):
            raise NumericError(f"non-finite difference for slot {k}", slot=k)
        grad[k] = g
    return grad
