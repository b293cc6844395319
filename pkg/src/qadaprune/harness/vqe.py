"""VQE energy evaluation and the exact-diagonalization oracle."""
from __future__ import annotations

import numpy as np

from ..circuits import HF_STATE, ParamCircuit, bind_and_run
from ..errors import CapabilityError, InputError
from ..simulator import PauliSum, Statevector, init_basis_state, sampled_expectation

EXACT_DIAG_MAX_QUBITS = 12


def exact_diag(hamiltonian: PauliSum) -> float:
    """Smallest eigenvalue of the dense Hamiltonian matrix."""
    if hamiltonian.n_qubits > EXACT_DIAG_MAX_QUBITS:
        raise CapabilityError(f"exact diagonalization is limited to {EXACT_DIAG_MAX_QUBITS} qubits")
    return float(np.linalg.eigvalsh(hamiltonian.to_matrix())[0])


def hf_state(n_qubits: int = 4) -> Statevector:
    """Lower half of the spin orbitals occupied; ``|1100>`` for H2."""
    half = n_qubits // 2
    bits = "1" * half + "0" * (n_qubits - half)
    assert n_qubits != 4 or bits == HF_STATE
    return init_basis_state(n_qubits, bits)


def vqe_energy(circuit: ParamCircuit, params, hamiltonian: PauliSum, initial: Statevector | None = None,
               shots: int = 0, seed=0) -> float:
    """Energy of ``circuit(params)`` applied to ``initial`` (default ``|1100>``)."""
    if hamiltonian.n_qubits != circuit.n_qubits:
        raise InputError(f"Hamiltonian on {hamiltonian.n_qubits} qubits, circuit on {circuit.n_qubits}")
    if initial is None:
        initial = hf_state(circuit.n_qubits)
    state = bind_and_run(circuit, params, initial=initial)
    if shots:
        return float(sampled_expectation(state, hamiltonian, shots, seed))
    return float(hamiltonian.expectation(state))
