"""VQE for H2 (STO-3G, 4 qubits) from the Hartree-Fock state |1100>.

The Hamiltonians were computed offline and ship as Pauli-sum text files.
"""
import numpy as np

from qadaprune import build_vqe_custom
from qadaprune.harness import data_path, exact_diag, load_hamiltonian, preset, run_experiment, vqe_energy

h = load_hamiltonian(data_path("h2_0.7414.ham"))
print(f"{len(h.terms)} terms, exact ground energy {exact_diag(h):.6f} Ha")
print(f"HF energy (all angles zero): {vqe_energy(build_vqe_custom(3), np.zeros(24), h):.6f} Ha")

for name in ("vqe", "vqe_adam"):
    cfg = preset(name, seed=0)
    p = run_experiment(cfg).summary
    u = run_experiment(cfg.without_pruning()).summary
    print(f"{name}: unpruned {u.final_energy:.5f}, pruned {p.final_energy:.5f} "
          f"({p.n_frozen}/{p.n_params} frozen, stopped: {p.stopped})")

print("bond length sweep, exact energies:")
for bond in ("0.5000", "0.7000", "1.0000", "1.5000", "2.1000"):
    print(f"  {bond} A  {exact_diag(load_hamiltonian(data_path(f'h2_{bond}.ham'))):.6f}")
