"""Dense statevector simulation.

Bit ordering: qubit 0 is the most significant bit of the basis index, so the
amplitude of ``|q0 q1 ... q(n-1)>`` lives at ``int("q0q1...q(n-1)", 2)``.
``init_basis_state(4, "1100")`` therefore puts its weight on index 12.

A ``Statevector`` may carry a leading batch axis (one state per data sample).
Every routine here broadcasts over it; rotation angles may then be given per
sample. Internally amplitudes are handled as tensors of shape
``(batch, 2, ..., 2)`` where qubit ``q`` sits on axis ``q + 1``.

Dense simulation is capped at ``MAX_QUBITS`` qubits.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache, reduce

import numpy as np

from .errors import CapabilityError, InputError

MAX_QUBITS = 20
NORM_TOL = 1e-10
# PauliSum expectations go through a cached dense matrix up to this size
DENSE_OBSERVABLE_MAX_QUBITS = 8


class GateKind(enum.Enum):
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    RZZ = "RZZ"
    CZ = "CZ"
    CNOT = "CNOT"
    X = "X"

    @property
    def is_rotation(self) -> bool:
        return self in _ROTATIONS

    @property
    def arity(self) -> int:
        return 2 if self in _TWO_QUBIT else 1


_ROTATIONS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.RZZ})
_TWO_QUBIT = frozenset({GateKind.RZZ, GateKind.CZ, GateKind.CNOT})


@dataclass(frozen=True, eq=False)
class Statevector:
    """Normalized amplitudes over ``n_qubits`` qubits, optionally batched.

    ``amps`` has shape ``(2**n,)`` or ``(batch, 2**n)`` and is read-only.
    """

    n_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        n = _check_n_qubits(self.n_qubits)
        amps = np.array(self.amps, dtype=np.complex128)
        if amps.ndim not in (1, 2) or amps.shape[-1] != 2**n:
            raise InputError(f"expected {2**n} amplitudes per state, got shape {amps.shape}")
        norms = np.sum(np.abs(amps) ** 2, axis=-1)
        if np.any(np.abs(norms - 1.0) > NORM_TOL):
            raise InputError("amplitudes are not normalized")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @classmethod
    def _wrap(cls, n_qubits: int, amps: np.ndarray) -> Statevector:
        # trusted constructor: skips the copy and the norm check
        obj = cls.__new__(cls)
        amps = np.ascontiguousarray(amps)
        amps.flags.writeable = False
        object.__setattr__(obj, "n_qubits", n_qubits)
        object.__setattr__(obj, "amps", amps)
        return obj

    @property
    def batched(self) -> bool:
        return self.amps.ndim == 2

    @property
    def batch_size(self) -> int:
        return self.amps.shape[0] if self.batched else 1

    def norm_sq(self):
        return np.sum(np.abs(self.amps) ** 2, axis=-1)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to ``(batch, 2, ..., 2)``."""
        return self.amps.reshape((self.batch_size,) + (2,) * self.n_qubits)

    @classmethod
    def from_tensor(cls, psi: np.ndarray, batched: bool = True) -> Statevector:
        n = psi.ndim - 1
        flat = psi.reshape(psi.shape[0], 2**n)
        return cls._wrap(n, flat if batched else flat[0])

    def broadcast(self, batch: int) -> Statevector:
        """Repeat an unbatched state ``batch`` times."""
        if self.batched:
            if self.batch_size != batch:
                raise InputError(f"state batch {self.batch_size} does not match {batch}")
            return self
        return Statevector._wrap(self.n_qubits, np.broadcast_to(self.amps, (batch, self.amps.size)).copy())


def _check_n_qubits(n) -> int:
    if int(n) != n or n < 1:
        raise InputError(f"n_qubits must be a positive integer, got {n!r}")
    if n > MAX_QUBITS:
        raise CapabilityError(f"dense simulation is capped at {MAX_QUBITS} qubits, got {n}")
    return int(n)


def zero_state(n_qubits: int) -> Statevector:
    return init_basis_state(n_qubits, "0" * n_qubits)


def init_basis_state(n_qubits: int, bits) -> Statevector:
    """Computational basis state ``|bits>``.

    ``bits`` is a string like ``"1100"`` or a sequence of 0/1; its first
    entry is qubit 0, the most significant bit of the index.
    """
    n = _check_n_qubits(n_qubits)
    bits = "".join(str(int(b)) for b in bits) if not isinstance(bits, str) else bits
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise InputError(f"bits {bits!r} is not a {n}-bit string")
    amps = np.zeros(2**n, dtype=np.complex128)
    amps[int(bits, 2)] = 1.0
    return Statevector._wrap(n, amps)


def _check_gate(kind: GateKind, targets, angle, n_qubits: int) -> tuple:
    targets = tuple(int(t) for t in targets)
    if len(targets) != kind.arity:
        raise InputError(f"{kind.value} acts on {kind.arity} qubit(s), got targets {targets}")
    if len(set(targets)) != len(targets):
        raise InputError(f"duplicate targets {targets}")
    if any(t < 0 or t >= n_qubits for t in targets):
        raise InputError(f"targets {targets} out of range for {n_qubits} qubits")
    if kind.is_rotation and angle is None:
        raise InputError(f"{kind.value} needs an angle")
    if not kind.is_rotation and angle is not None:
        raise InputError(f"{kind.value} takes no angle")
    return targets


def _angle_array(angle, ndim: int):
    """Broadcastable half-angle: scalar, or (batch,) reshaped against ``ndim`` axes."""
    half = np.asarray(angle, dtype=np.float64) / 2.0
    if half.ndim:
        half = half.reshape((-1,) + (1,) * (ndim - 1))
    return half


def _apply(psi: np.ndarray, kind: GateKind, targets: tuple, angle=None) -> np.ndarray:
    """Apply one gate to a ``(batch, 2, ..., 2)`` tensor; returns a new array."""
    nd = psi.ndim
    if kind is GateKind.X:
        return np.flip(psi, axis=targets[0] + 1)
    if kind in (GateKind.RX, GateKind.RY, GateKind.RZ):
        ax = targets[0] + 1
        p0 = psi.take(0, axis=ax)
        p1 = psi.take(1, axis=ax)
        half = _angle_array(angle, nd - 1)
        if kind is GateKind.RZ:
            phase = np.exp(-1j * half)
            return np.stack([phase * p0, np.conj(phase) * p1], axis=ax)
        c, s = np.cos(half), np.sin(half)
        if kind is GateKind.RX:
            return np.stack([c * p0 - 1j * s * p1, c * p1 - 1j * s * p0], axis=ax)
        return np.stack([c * p0 - s * p1, s * p0 + c * p1], axis=ax)
    a, b = targets[0] + 1, targets[1] + 1
    if kind is GateKind.RZZ:
        half = np.asarray(angle, dtype=np.float64) / 2.0
        same, diff = np.exp(-1j * half), np.exp(1j * half)
        # [[same, diff], [diff, same]] indexed by (bit_a, bit_b); symmetric
        factor = np.stack([np.stack([same, diff], -1), np.stack([diff, same], -1)], -2)
        shape = [1] * nd
        shape[a] = shape[b] = 2
        if factor.ndim == 3:
            shape[0] = factor.shape[0]
        return psi * factor.reshape(shape)
    out = psi.copy()
    idx = [slice(None)] * nd
    if kind is GateKind.CZ:
        idx[a] = idx[b] = 1
        out[tuple(idx)] *= -1
        return out
    # CNOT: control a, target b; flip the target inside the control=1 slice
    idx[a] = 1
    sub_axis = b if b < a else b - 1
    out[tuple(idx)] = np.flip(psi[tuple(idx)], axis=sub_axis)
    return out


def apply_gate(state: Statevector, kind: GateKind, targets, angle=None) -> Statevector:
    """Return the state after one gate.

    Rotations are ``exp(-i * angle * G / 2)`` with ``G`` in ``{X, Y, Z, Z@Z}``.
    For a batched state ``angle`` may be an array with one entry per sample.
    """
    kind = GateKind(kind)
    targets = _check_gate(kind, targets, angle, state.n_qubits)
    if angle is not None:
        angle = np.asarray(angle, dtype=np.float64)
        if angle.ndim and (not state.batched or angle.shape != (state.batch_size,)):
            raise InputError("per-sample angles need a batched state of matching size")
    psi = _apply(state.tensor(), kind, targets, angle)
    return Statevector.from_tensor(psi, batched=state.batched)


# -- observables -------------------------------------------------------------

_PAULI_MATS = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@lru_cache(maxsize=256)
def _parity_signs(support: tuple, n_qubits: int) -> np.ndarray:
    """(-1)**(sum of bits on ``support``) for every basis index."""
    idx = np.arange(2**n_qubits)
    parity = np.zeros(2**n_qubits, dtype=np.int64)
    for q in support:
        parity ^= (idx >> (n_qubits - 1 - q)) & 1
    signs = 1.0 - 2.0 * parity
    signs.flags.writeable = False
    return signs


def _apply_pauli_string(psi: np.ndarray, label: str) -> np.ndarray:
    out = psi
    for q, ch in enumerate(label):
        ax = q + 1
        if ch == "X":
            out = np.flip(out, axis=ax)
        elif ch == "Y":
            p0, p1 = out.take(0, axis=ax), out.take(1, axis=ax)
            out = np.stack([-1j * p1, 1j * p0], axis=ax)
        elif ch == "Z":
            out = np.stack([out.take(0, axis=ax), -out.take(1, axis=ax)], axis=ax)
    return out


def _measurement_basis(psi: np.ndarray, label: str) -> np.ndarray:
    """Rotate so that measuring Z on the support measures ``label``.

    RY(-pi/2) maps X onto Z and RX(pi/2) maps Y onto Z.
    """
    for q, ch in enumerate(label):
        if ch == "X":
            psi = _apply(psi, GateKind.RY, (q,), -math.pi / 2)
        elif ch == "Y":
            psi = _apply(psi, GateKind.RX, (q,), math.pi / 2)
    return psi


def _pauli_expectation(psi: np.ndarray, probs: np.ndarray, label: str) -> np.ndarray:
    n = psi.ndim - 1
    support = tuple(q for q, ch in enumerate(label) if ch != "I")
    if not support:
        return np.ones(psi.shape[0])
    if all(label[q] == "Z" for q in support):
        return probs @ _parity_signs(support, n)
    flat = psi.reshape(psi.shape[0], -1)
    moved = _apply_pauli_string(psi, label).reshape(psi.shape[0], -1)
    return np.real(np.sum(np.conj(flat) * moved, axis=1))


def _binomial_estimate(p_plus, shots: int, rng) -> np.ndarray:
    p_plus = np.clip(p_plus, 0.0, 1.0)
    hits = rng.binomial(shots, p_plus)
    return (2.0 * hits - shots) / shots


def _unbatch(state: Statevector, values: np.ndarray):
    return values if state.batched else float(values[0])


@dataclass(frozen=True)
class PauliSum:
    """Weighted sum of Pauli strings, e.g. ``[(-0.24, "IIZI"), (0.17, "ZZII")]``."""

    n_qubits: int
    terms: tuple

    def __post_init__(self):
        n = _check_n_qubits(self.n_qubits)
        terms = []
        for coeff, label in self.terms:
            coeff = float(coeff)
            label = str(label).upper()
            if not math.isfinite(coeff):
                raise InputError(f"non-finite coefficient on {label}")
            if len(label) != n or set(label) - set("IXYZ"):
                raise InputError(f"bad Pauli string {label!r} for {n} qubits")
            terms.append((coeff, label))
        if not terms:
            raise InputError("a PauliSum needs at least one term")
        object.__setattr__(self, "terms", tuple(terms))

    @classmethod
    def single(cls, label: str, coeff: float = 1.0) -> PauliSum:
        return cls(len(label), ((coeff, label),))

    @classmethod
    def parse(cls, text: str) -> PauliSum:
        """Read ``<coefficient> <pauli-string>`` lines; ``#`` starts a comment."""
        terms = []
        n = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected '<coefficient> <pauli-string>'")
            try:
                coeff = float(parts[0])
            except ValueError:
                raise InputError(f"line {lineno}: bad coefficient {parts[0]!r}") from None
            label = parts[1].upper()
            if n is None:
                n = len(label)
            elif len(label) != n:
                raise InputError(f"line {lineno}: Pauli string length {len(label)} != {n}")
            if set(label) - set("IXYZ"):
                raise InputError(f"line {lineno}: bad Pauli string {parts[1]!r}")
            terms.append((coeff, label))
        if not terms:
            raise InputError("no Hamiltonian terms found")
        return cls(n, tuple(terms))

    def to_text(self) -> str:
        return "".join(f"{c:+.15f} {p}\n" for c, p in self.terms)

    def to_matrix(self) -> np.ndarray:
        dim = 2**self.n_qubits
        mat = np.zeros((dim, dim), dtype=np.complex128)
        for coeff, label in self.terms:
            mat += coeff * reduce(np.kron, [_PAULI_MATS[c] for c in label])
        return mat

    def _check(self, state: Statevector):
        if state.n_qubits != self.n_qubits:
            raise InputError(f"observable on {self.n_qubits} qubits, state on {state.n_qubits}")

    @cached_property
    def _dense(self) -> np.ndarray:
        mat = self.to_matrix()
        mat.flags.writeable = False
        return mat

    def expectation(self, state: Statevector):
        self._check(state)
        if self.n_qubits <= DENSE_OBSERVABLE_MAX_QUBITS:
            amps = state.amps.reshape(state.batch_size, -1)
            vals = np.real(np.einsum("bi,ij,bj->b", np.conj(amps), self._dense, amps))
            return _unbatch(state, vals)
        return self._expectation_by_terms(state)

    def _expectation_by_terms(self, state: Statevector):
        psi = state.tensor()
        probs = np.abs(psi.reshape(psi.shape[0], -1)) ** 2
        total = np.zeros(psi.shape[0])
        for coeff, label in self.terms:
            total += coeff * _pauli_expectation(psi, probs, label)
        return _unbatch(state, total)

    def sampled_expectation(self, state: Statevector, shots: int, rng):
        self._check(state)
        psi = state.tensor()
        n = self.n_qubits
        total = np.zeros(psi.shape[0])
        for coeff, label in self.terms:
            support = tuple(q for q, ch in enumerate(label) if ch != "I")
            if not support:
                total += coeff
                continue
            rotated = _measurement_basis(psi, label)
            probs = np.abs(rotated.reshape(psi.shape[0], -1)) ** 2
            p_plus = (1.0 + probs @ _parity_signs(support, n)) / 2.0
            total += coeff * _binomial_estimate(p_plus, shots, rng)
        return _unbatch(state, total)


@dataclass(frozen=True)
class ZeroProjector:
    """Projector onto ``|0...0>``; its expectation is the all-zeros probability."""

    n_qubits: int

    def expectation(self, state: Statevector):
        if state.n_qubits != self.n_qubits:
            raise InputError(f"observable on {self.n_qubits} qubits, state on {state.n_qubits}")
        amps = state.amps.reshape(state.batch_size, -1)
        return _unbatch(state, np.abs(amps[:, 0]) ** 2)

    def sampled_expectation(self, state: Statevector, shots: int, rng):
        p0 = np.atleast_1d(self.expectation(state))
        hits = rng.binomial(shots, np.clip(p0, 0.0, 1.0))
        return _unbatch(state, hits / shots)


def expectation(state: Statevector, obs):
    """Exact expectation value of ``obs`` (per sample for a batched state)."""
    return obs.expectation(state)


def sampled_expectation(state: Statevector, obs, shots: int, rng_seed):
    """Finite-shot estimate of ``obs``.

    Each Pauli term is measured separately: local rotations map it onto the Z
    basis, ``shots`` bitstrings are drawn and their +-1 parities averaged.
    ``rng_seed`` may be an int, a ``SeedSequence`` or a ``Generator``.
    """
    if int(shots) != shots or shots < 1:
        raise InputError(f"shots must be a positive integer, got {shots!r}")
    rng = np.random.default_rng(rng_seed)
    return obs.sampled_expectation(state, int(shots), rng)
