"""Regenerate the shipped H2 qubit Hamiltonians.

Needs pyscf (not a runtime dependency of the package). Runs RHF/STO-3G for
each bond length, builds the second-quantized Hamiltonian in the
interleaved spin-orbital basis (0a, 0b, 1a, 1b), maps it to qubits with the
Jordan-Wigner transform (occupied orbital = |1>, qubit 0 = most significant
bit) and writes the Pauli decomposition. The Hartree-Fock reference is then
|1100>.

    python tools/make_h2_hamiltonians.py src/qadaprune/data
"""
import itertools
import sys
from functools import reduce
from pathlib import Path

import numpy as np
from pyscf import ao2mo, fci, gto, scf

I2 = np.eye(2)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
LOWER = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|


def annihilator(j, n):
    ops = [PAULI["Z"]] * j + [LOWER] + [I2] * (n - j - 1)
    return reduce(np.kron, ops)


def qubit_hamiltonian(bond):
    mol = gto.M(atom=f"H 0 0 0; H 0 0 {bond}", basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol).run()
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.full(mol, c), c.shape[1])  # chemist (pq|rs)
    n_orb = c.shape[1]
    n = 2 * n_orb
    a = [annihilator(j, n) for j in range(n)]
    ad = [op.conj().T for op in a]
    h = mol.energy_nuc() * np.eye(2**n, dtype=complex)
    for p, q in itertools.product(range(n), repeat=2):
        if p % 2 == q % 2:
            h += h1[p // 2, q // 2] * ad[p] @ a[q]
    for p, q, r, s in itertools.product(range(n), repeat=4):
        if p % 2 == q % 2 and r % 2 == s % 2:
            v = eri[p // 2, q // 2, r // 2, s // 2]
            if v != 0.0:
                h += 0.5 * v * ad[p] @ ad[r] @ a[s] @ a[q]
    terms = []
    for label in itertools.product("IXYZ", repeat=n):
        mat = reduce(np.kron, [PAULI[c] for c in label])
        coeff = np.trace(mat @ h).real / 2**n
        if abs(coeff) > 1e-10:
            terms.append((coeff, "".join(label)))
    e_fci = fci.FCI(mf).kernel()[0]
    return terms, mf.e_tot, e_fci, h


def main(outdir):
    outdir = Path(outdir)
    bonds = [round(0.5 + 0.1 * i, 1) for i in range(17)] + [0.7414]
    for bond in bonds:
        terms, e_hf, e_fci, h = qubit_hamiltonian(bond)
        e_min = np.linalg.eigvalsh(h).min()
        assert abs(e_min - e_fci) < 1e-8, (bond, e_min, e_fci)
        assert abs(h[12, 12].real - e_hf) < 1e-8, (bond, h[12, 12], e_hf)
        lines = [
            f"# H2 STO-3G, bond length {bond} Angstrom, Jordan-Wigner, qubit 0 = MSB",
            "# generated by tools/make_h2_hamiltonians.py (pyscf RHF + FCI check)",
            f"# hf_energy {e_hf:.12f}",
            f"# fci_energy {e_fci:.12f}",
        ]
        lines += [f"{coeff:+.15f} {label}" for coeff, label in terms]
        (outdir / f"h2_{bond:.4f}.ham").write_text("\n".join(lines) + "\n")
        print(f"{bond:.4f}  HF {e_hf:.6f}  FCI {e_fci:.6f}  terms {len(terms)}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/qadaprune/data")
