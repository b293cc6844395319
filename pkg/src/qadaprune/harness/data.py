"""Dataset and Hamiltonian file loading."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import InputError, ParseError
from ..simulator import PauliSum

LABEL_ALPHABETS = {
    "pm1": {"+1": 1, "1": 1, "-1": -1},
    "01": {"0": 0, "1": 1},
}


def data_path(name: str) -> Path:
    """Path of a file shipped in ``qadaprune/data``."""
    return Path(str(resources.files("qadaprune") / "data" / name))


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    alphabet: str = "pm1"

    def __post_init__(self):
        x = np.asarray(self.features, dtype=np.float64)
        y = np.asarray(self.labels)
        if x.ndim != 2 or y.shape != (x.shape[0],):
            raise InputError(f"features {x.shape} and labels {y.shape} do not line up")
        allowed = set(LABEL_ALPHABETS[self.alphabet].values())
        if not set(np.unique(y).tolist()) <= allowed:
            raise InputError(f"labels outside the {self.alphabet} alphabet")
        object.__setattr__(self, "features", x)
        object.__setattr__(self, "labels", y.astype(np.int64))

    def __len__(self):
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    def subset(self, idx) -> Dataset:
        return Dataset(self.features[idx], self.labels[idx], self.alphabet)

    def split(self, train_fraction: float = 0.7, seed: int = 0, train_size: int | None = None):
        """Return ``(train, validation)``.

        With ``train_size`` the first rows form the training set in file
        order; otherwise rows are shuffled with ``seed`` and cut at
        ``train_fraction``.
        """
        m = len(self)
        if train_size is not None:
            if not 0 < train_size < m:
                raise InputError(f"train_size must be in (0, {m})")
            return self.subset(np.arange(train_size)), self.subset(np.arange(train_size, m))
        order = np.random.default_rng(seed).permutation(m)
        cut = int(round(train_fraction * m))
        if not 0 < cut < m:
            raise InputError("train_fraction leaves an empty split")
        return self.subset(np.sort(order[:cut])), self.subset(np.sort(order[cut:]))

    def minmax_scaled(self, low: float = 0.0, high: float = np.pi) -> Dataset:
        lo, hi = self.features.min(axis=0), self.features.max(axis=0)
        span = np.where(hi > lo, hi - lo, 1.0)
        x = low + (self.features - lo) / span * (high - low)
        return Dataset(x, self.labels, self.alphabet)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def load_dataset_csv(path, label_alphabet: str = "pm1", n_features: int | None = None) -> Dataset:
    """Read ``d`` feature columns followed by one label column.

    A first row containing non-numeric feature cells is taken as a header.
    ``label_alphabet`` is ``"pm1"`` (+1/-1) or ``"01"``.
    """
    if label_alphabet not in LABEL_ALPHABETS:
        raise InputError(f"unknown label alphabet {label_alphabet!r}")
    mapping = LABEL_ALPHABETS[label_alphabet]
    path = Path(path)
    rows, labels = [], []
    with path.open(newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            row = [cell.strip() for cell in row]
            if not row or all(not cell for cell in row):
                continue
            if not rows and lineno == 1 and not all(_is_number(c) for c in row[:-1]):
                continue
            if len(row) < 2:
                raise ParseError("need at least one feature and a label", path, lineno)
            if n_features is None:
                n_features = len(row) - 1
            if len(row) - 1 != n_features:
                raise ParseError(f"expected {n_features} features, got {len(row) - 1}", path, lineno)
            try:
                feats = [float(c) for c in row[:-1]]
            except ValueError:
                raise ParseError(f"non-numeric feature in {row[:-1]}", path, lineno) from None
            if row[-1] not in mapping:
                raise InputError(f"{path}:{lineno}: unknown label {row[-1]!r} for alphabet {label_alphabet}")
            rows.append(feats)
            labels.append(mapping[row[-1]])
    if not rows:
        raise InputError(f"{path}: no data rows")
    return Dataset(np.array(rows), np.array(labels), label_alphabet)


def load_hamiltonian(path) -> PauliSum:
    """Read a ``<coefficient> <pauli-string>`` per line Hamiltonian file."""
    path = Path(path)
    try:
        return PauliSum.parse(path.read_text(encoding="utf-8"))
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
