"""Stepping QAdaPrune by hand.

Thresholds start at 1/n and shrink by (1 - |g|) each step; every `window`
steps, slots whose accumulated |g_t - g_{t-1}| stayed below their threshold
are frozen for good.
"""
import numpy as np

from qadaprune import PruneConfig, QAdaPrune

pruner = QAdaPrune(2, PruneConfig(window=2))
theta = np.array([0.3, -0.7])
for t, g in enumerate([[0.5, 0.5], [0.5, 0.1], [0.5, 0.05]]):
    event = pruner.observe(np.array(g), theta)
    print(f"t={t} tau={pruner.state.tau} accum={pruner.state.accum}")
    if event:
        print(f"   event: saliency {event.saliency}, frozen {event.frozen_now}, accum at event {event.accum}")
print("frozen mask:", pruner.frozen, "ratio", pruner.pruning_ratio())

# frozen slots are pinned no matter what the optimizer does
print("apply_freeze([9, 9]) ->", pruner.apply_freeze([9.0, 9.0]))

# with k set only k salient slots are frozen per event, chosen at random
pruner = QAdaPrune(6, PruneConfig(window=1, k=2), seed=7)
for t in range(4):
    ev = pruner.observe(np.full(6, 0.01), np.arange(6.0))
    if ev:
        print(f"t={t}: {len(ev.saliency)} salient, froze {ev.frozen_now}")
