"""Parameter-shift gradients against central differences.

The Iris cost is a mean |<Z_3> - y| over samples; the shift rule is applied
to every expectation and chained through the loss.
"""
import numpy as np

from qadaprune import ExpectationCost, build_iris_qnn, finite_diff_grad, param_shift_grad
from qadaprune.harness import data_path, load_dataset_csv
from qadaprune.harness.losses import L2Loss
from qadaprune.harness.tasks import l2_readout

data = load_dataset_csv(data_path("iris_binary.csv"), "pm1")
circuit = build_iris_qnn(n_layers=2)
cost = ExpectationCost(circuit, l2_readout(4), L2Loss(data.labels), features=data.features)

theta = np.random.default_rng(0).uniform(-np.pi, np.pi, circuit.n_params)
shift = param_shift_grad(cost, theta)
fd = finite_diff_grad(cost, theta, h=1e-5)
print("shift rule :", np.round(shift.grad, 6))
print("finite diff:", np.round(fd, 6))
print("max |difference|:", np.max(np.abs(shift.grad - fd)))
print("circuit evaluations used:", shift.evals_used)

# frozen slots cost nothing and report exactly zero
frozen = np.zeros(circuit.n_params, dtype=bool)
frozen[:3] = True
part = param_shift_grad(cost, theta, frozen)
print("with 3 frozen slots:", part.evals_used, "evaluations, grad[:4] =", np.round(part.grad[:4], 6))

# with shots the gradient is a noisy but unbiased estimate
noisy = ExpectationCost(circuit, l2_readout(4), L2Loss(data.labels), features=data.features, shots=1000, seed=1)
draws = np.array([param_shift_grad(noisy, theta, step=s).grad for s in range(30)])
print("1000-shot gradient, mean over 30 draws vs exact (first 3):")
print(np.round(draws.mean(axis=0)[:3], 4), np.round(shift.grad[:3], 4))
