"""Statevectors, gates and expectation values.

Qubit 0 is the most significant bit, so |1100> sits at index 12.
"""
import numpy as np

from qadaprune import GateKind, PauliSum, apply_gate, init_basis_state, sampled_expectation, zero_state

hf = init_basis_state(4, "1100")
print("HF state support:", np.flatnonzero(hf.amps))        # [12]

# RX(theta)|0> has <Z> = cos(theta)
psi = apply_gate(zero_state(1), GateKind.RX, (0,), np.pi / 3)
print("<Z> after RX(pi/3):", PauliSum.single("Z").expectation(psi), "expected", np.cos(np.pi / 3))

# a Bell pair: H is not in the gate set, RY(pi/2) does the same job on |0>
bell = apply_gate(apply_gate(zero_state(2), GateKind.RY, (0,), np.pi / 2), GateKind.CNOT, (0, 1))
for label in ("ZZ", "XX", "YY", "ZI"):
    print(f"<{label}> on Bell:", round(PauliSum.single(label).expectation(bell), 12))

# finite shots: the estimate scatters around the exact value with std ~ 1/sqrt(shots)
obs = PauliSum(2, ((0.5, "XI"), (0.5, "ZZ")))
exact = obs.expectation(bell)
estimates = [sampled_expectation(bell, obs, 1000, seed) for seed in range(200)]
print(f"exact {exact:.4f}, mean of 200 estimates {np.mean(estimates):.4f}, spread {np.std(estimates):.4f}")

# the same routines take a batch of states, one per data sample
batch = zero_state(1).broadcast(3)
rotated = apply_gate(batch, GateKind.RY, (0,), np.array([0.0, np.pi / 2, np.pi]))
print("batched <Z>:", np.round(PauliSum.single("Z").expectation(rotated), 12))
