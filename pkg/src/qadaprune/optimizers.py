"""Coordinate-wise first-order optimizers that respect a freeze mask.

Frozen slots are returned bit-identical and their moment accumulators stop
updating.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError


class OptimizerKind(enum.Enum):
    GD = "gd"
    RMSPROP = "rmsprop"
    ADAM = "adam"


@dataclass(frozen=True)
class OptimizerConfig:
    kind: OptimizerKind = OptimizerKind.GD
    learning_rate: float = 0.1
    rmsprop_decay: float = 0.9
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    epsilon: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, "kind", OptimizerKind(self.kind))
        if not self.learning_rate > 0:
            raise InputError("learning_rate must be positive")
        if not 0 < self.rmsprop_decay < 1:
            raise InputError("rmsprop_decay must be in (0, 1)")


class Optimizer:
    def __init__(self, n_params: int, lr: float):
        if not lr > 0:
            raise InputError("learning rate must be positive")
        self.n_params = n_params
        self.lr = lr
        self.t = 0

    def step(self, params, grad, frozen=None) -> np.ndarray:
        """Return updated parameters; slots where ``frozen`` is set are untouched."""
        params = np.asarray(params, dtype=np.float64)
        grad = np.asarray(getattr(grad, "grad", grad), dtype=np.float64)
        if params.shape != (self.n_params,) or grad.shape != (self.n_params,):
            raise InputError(f"expected vectors of length {self.n_params}")
        live = np.ones(self.n_params, dtype=bool) if frozen is None else ~np.asarray(frozen, dtype=bool)
        if not np.all(np.isfinite(grad[live])):
            bad = int(np.flatnonzero(live & ~np.isfinite(grad))[0])
            raise NumericError(f"non-finite gradient component {bad}", slot=bad)
        self.t += 1
        new = params.copy()
        new[live] = params[live] - self._delta(grad, live)
        return new

    def _delta(self, grad, live):
        raise NotImplementedError


class GradientDescent(Optimizer):
    def _delta(self, grad, live):
        return self.lr * grad[live]


class RMSProp(Optimizer):
    """Plain (uncentered) RMSProp."""

    def __init__(self, n_params, lr, decay=0.9, eps=1e-8):
        super().__init__(n_params, lr)
        self.decay = decay
        self.eps = eps
        self.v = np.zeros(n_params)

    def _delta(self, grad, live):
        g = grad[live]
        self.v[live] = self.decay * self.v[live] + (1 - self.decay) * g**2
        return self.lr * g / (np.sqrt(self.v[live]) + self.eps)


class Adam(Optimizer):
    def __init__(self, n_params, lr, beta1=0.9, beta2=0.999, eps=1e-8):
        super().__init__(n_params, lr)
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.m = np.zeros(n_params)
        self.v = np.zeros(n_params)

    def _delta(self, grad, live):
        g = grad[live]
        self.m[live] = self.beta1 * self.m[live] + (1 - self.beta1) * g
        self.v[live] = self.beta2 * self.v[live] + (1 - self.beta2) * g**2
        m_hat = self.m[live] / (1 - self.beta1**self.t)
        v_hat = self.v[live] / (1 - self.beta2**self.t)
        return self.lr * m_hat / (np.sqrt(v_hat) + self.eps)


def make_optimizer(config: OptimizerConfig, n_params: int) -> Optimizer:
    if config.kind is OptimizerKind.GD:
        return GradientDescent(n_params, config.learning_rate)
    if config.kind is OptimizerKind.RMSPROP:
        return RMSProp(n_params, config.learning_rate, config.rmsprop_decay, config.epsilon)
    return Adam(n_params, config.learning_rate, config.adam_beta1, config.adam_beta2, config.epsilon)
