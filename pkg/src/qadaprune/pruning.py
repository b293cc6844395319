"""Adaptive per-parameter pruning (QAdaPrune), run alongside any optimizer loop.

Every step the pruner sees the gradient that the optimizer is about to use:

* each live slot accumulates ``|g_t - g_{t-1}|`` (a cheap curvature proxy);
* each live threshold shrinks as ``tau <- max(0, tau * (1 - |g|))``, starting
  from ``1/n``, so slots that matter for the cost lose their threshold fast;
* every ``window`` steps, slots whose accumulated difference is below their
  threshold form the saliency list. All of them (or ``k`` drawn at random)
  are frozen at their current value, and the accumulator starts over.

Freezing is permanent: a frozen slot is never regrown, its gradient is no
longer computed, and its threshold and accumulator stop changing.

Typical loop::

    pruner = QAdaPrune(n_params, PruneConfig(window=5), seed=0)
    for t in range(steps):
        g = param_shift_grad(cost, theta, pruner.frozen, step=t).grad
        pruner.observe(g, theta)
        theta = optimizer.step(theta, g, pruner.frozen)
        theta = pruner.apply_freeze(theta)
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NumericError


@dataclass(frozen=True)
class PruneConfig:
    window: int = 5
    k: int | None = None
    enabled: bool = True

    def __post_init__(self):
        if int(self.window) != self.window or self.window < 1:
            raise InputError("window must be a positive integer")
        if self.k is not None and (int(self.k) != self.k or self.k < 1):
            raise InputError("k must be a positive integer or None")


@dataclass
class PruneState:
    tau: np.ndarray
    accum: np.ndarray
    last_grad: np.ndarray
    frozen: np.ndarray
    frozen_values: np.ndarray
    kappa: int = 0
    t: int = 0

    @classmethod
    def initial(cls, n_params: int) -> PruneState:
        if n_params < 1:
            raise InputError("n_params must be >= 1")
        return cls(
            tau=np.full(n_params, 1.0 / n_params),
            accum=np.zeros(n_params),
            last_grad=np.zeros(n_params),
            frozen=np.zeros(n_params, dtype=bool),
            frozen_values=np.zeros(n_params),
        )

    @property
    def n_params(self) -> int:
        return self.tau.size


@dataclass(frozen=True)
class PruneEvent:
    step: int
    saliency: tuple
    frozen_now: tuple
    tau: np.ndarray
    accum: np.ndarray

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "saliency": list(self.saliency),
            "frozen_now": list(self.frozen_now),
            "tau": self.tau.tolist(),
            "accum": self.accum.tolist(),
        }


def update_thresholds(tau, grad, frozen=None) -> np.ndarray:
    """``tau_j * (1 - |g_j|)`` clamped at 0 on live slots; frozen slots keep theirs."""
    tau = np.asarray(tau, dtype=np.float64)
    grad = np.asarray(grad, dtype=np.float64)
    if grad.shape != tau.shape:
        raise InputError(f"gradient length {grad.size} != {tau.size}")
    if not np.all(np.isfinite(grad)):
        raise NumericError("non-finite gradient", slot=int(np.flatnonzero(~np.isfinite(grad))[0]))
    new = np.maximum(0.0, tau - tau * np.abs(grad))
    if frozen is not None:
        new = np.where(frozen, tau, new)
    return new


class QAdaPrune:
    """Pruning co-routine; owns one ``PruneState``.

    ``seed`` drives the random choice of ``k`` slots, drawn from
    ``SeedSequence([seed, kappa])`` at the kappa-th pruning event. With
    ``config.enabled`` false every method is a passthrough.
    """

    def __init__(self, n_params: int, config: PruneConfig = PruneConfig(), seed: int = 0):
        self.config = config
        self.seed = int(seed)
        self.state = PruneState.initial(n_params)

    @property
    def n_params(self) -> int:
        return self.state.n_params

    @property
    def frozen(self) -> np.ndarray:
        return self.state.frozen.copy()

    @property
    def n_frozen(self) -> int:
        return int(self.state.frozen.sum())

    @property
    def all_frozen(self) -> bool:
        return bool(self.state.frozen.all())

    def pruning_ratio(self) -> float:
        return self.n_frozen / self.n_params

    def observe(self, grad, params) -> PruneEvent | None:
        """Feed one step's gradient; returns a ``PruneEvent`` on window boundaries."""
        if not self.config.enabled:
            return None
        st = self.state
        grad = np.asarray(getattr(grad, "grad", grad), dtype=np.float64)
        params = np.asarray(params, dtype=np.float64)
        if grad.shape != (st.n_params,) or params.shape != (st.n_params,):
            raise InputError(f"expected gradient and parameters of length {st.n_params}")
        live = ~st.frozen
        if not np.all(np.isfinite(grad[live])):
            bad = int(np.flatnonzero(live & ~np.isfinite(grad))[0])
            raise NumericError(f"non-finite gradient component {bad}", slot=bad)

        if st.t > 0:
            st.accum[live] += np.abs(grad[live] - st.last_grad[live])
        st.last_grad = grad.copy()
        st.tau = update_thresholds(st.tau, np.where(live, grad, 0.0), st.frozen)

        event = None
        if st.t > 0 and st.t % self.config.window == 0 and live.any():
            saliency = np.flatnonzero(live & (st.accum < st.tau))
            chosen = saliency
            k = self.config.k
            if k is not None and k < saliency.size:
                rng = np.random.default_rng(np.random.SeedSequence([self.seed, st.kappa]))
                chosen = np.sort(rng.choice(saliency, size=k, replace=False))
            st.frozen[chosen] = True
            st.frozen_values[chosen] = params[chosen]
            event = PruneEvent(
                step=st.t,
                saliency=tuple(int(j) for j in saliency),
                frozen_now=tuple(int(j) for j in chosen),
                tau=st.tau.copy(),
                accum=st.accum.copy(),
            )
            st.accum[:] = 0.0
            st.kappa += 1
        st.t += 1
        return event

    def apply_freeze(self, params) -> np.ndarray:
        """Pin frozen slots to their recorded values."""
        params = np.array(params, dtype=np.float64)
        if not self.config.enabled:
            return params
        mask = self.state.frozen
        params[mask] = self.state.frozen_values[mask]
        return params
