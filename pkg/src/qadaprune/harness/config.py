"""Experiment configuration, presets and YAML loading."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from ..circuits import AnsatzFamily, AnsatzSpec
from ..errors import InputError
from ..optimizers import OptimizerConfig, OptimizerKind
from ..pruning import PruneConfig
from .data import data_path

EXPERIMENTS = ("barren", "classify", "vqe", "gradcheck")
INITS = ("uniform", "normal", "zeros")
TASKS = ("l2", "bce")


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything needed to reproduce one run.

    ``init`` is ``uniform`` (U(-pi, pi)), ``normal`` (N(0, pi), pi being the
    standard deviation) or ``zeros``. ``shots=0`` means exact expectations.
    Classification with ``task="bce"`` trains on shuffled mini-batches for
    ``epochs`` epochs; every other experiment takes ``steps`` full-batch steps.
    """

    experiment: str
    ansatz: AnsatzSpec
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    prune: PruneConfig = field(default_factory=PruneConfig)
    shots: int = 0
    steps: int = 100
    epochs: int = 30
    batch_size: int = 32
    seed: int = 0
    init: str = "uniform"
    task: str | None = None
    dataset: str | None = None
    hamiltonian: str | None = None
    output: str | None = None
    train_fraction: float = 0.7
    train_size: int | None = None
    split_seed: int = 0
    scale_features: bool = False
    record_snapshots: bool = False
    gradcheck_trials: int = 50

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise InputError(f"experiment must be one of {EXPERIMENTS}")
        if self.init not in INITS:
            raise InputError(f"init must be one of {INITS}")
        if self.shots < 0 or self.steps < 1 or self.epochs < 1 or self.batch_size < 1:
            raise InputError("shots must be >= 0; steps, epochs and batch_size >= 1")
        if self.experiment == "classify":
            if self.dataset is None:
                raise InputError("classify needs a dataset path")
            if self.task not in TASKS:
                raise InputError(f"classify needs task in {TASKS}")
        if self.experiment == "vqe" and self.hamiltonian is None:
            raise InputError("vqe needs a hamiltonian path")

    def with_overrides(self, **kw) -> ExperimentConfig:
        return replace(self, **kw)

    def without_pruning(self) -> ExperimentConfig:
        return replace(self, prune=replace(self.prune, enabled=False))

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["ansatz"]["family"] = self.ansatz.family.value
        d["optimizer"]["kind"] = self.optimizer.kind.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        d = dict(d)
        unknown = set(d) - {f.name for f in dataclasses.fields(cls)}
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        try:
            if isinstance(d.get("ansatz"), dict):
                d["ansatz"] = AnsatzSpec(**d["ansatz"])
            if isinstance(d.get("optimizer"), dict):
                d["optimizer"] = OptimizerConfig(**d["optimizer"])
            if isinstance(d.get("prune"), dict):
                d["prune"] = PruneConfig(**d["prune"])
            return cls(**d)
        except (TypeError, ValueError) as exc:
            raise InputError(f"bad config: {exc}") from None


def resolve_path(p) -> Path:
    """A path as given, or the shipped data file of that name."""
    path = Path(p)
    if path.exists():
        return path
    shipped = data_path(str(p))
    if shipped.exists():
        return shipped
    raise InputError(f"no such file: {p}")


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from None
    except yaml.YAMLError as exc:
        raise InputError(f"{path}: {exc}") from None
    if not isinstance(raw, dict):
        raise InputError(f"{path}: expected a mapping at top level")
    return ExperimentConfig.from_dict(raw)


def preset(name: str, **overrides) -> ExperimentConfig:
    """Settings of the reproduced experiments.

    ``barren``: identity learning on the hardware-efficient ansatz.
    ``iris``: Iris-binary classification with L2 loss and 1000 shots.
    ``mnist``: 16-pixel two-class images, BCE loss.
    ``vqe``: H2 at 0.7414 A, gradient descent; ``vqe_adam``: the Adam variant.
    ``gradcheck``: randomized shift-rule vs finite-difference comparison.
    """
    hea = AnsatzFamily.HARDWARE_EFFICIENT
    presets = {
        "barren": dict(
            experiment="barren",
            ansatz=AnsatzSpec(hea, 8, 2),
            optimizer=OptimizerConfig(OptimizerKind.GD, 0.2),
            steps=200,
            init="uniform",
        ),
        "iris": dict(
            experiment="classify",
            task="l2",
            ansatz=AnsatzSpec(AnsatzFamily.IRIS_QNN, 4, 4),
            optimizer=OptimizerConfig(OptimizerKind.RMSPROP, 0.1),
            steps=100,
            shots=1000,
            init="uniform",
            dataset="iris_binary.csv",
        ),
        "mnist": dict(
            experiment="classify",
            task="bce",
            ansatz=AnsatzSpec(AnsatzFamily.MNIST_QNN, 4, 2),
            optimizer=OptimizerConfig(OptimizerKind.ADAM, 0.05),
            epochs=30,
            batch_size=32,
            init="uniform",
            dataset="two_gaussian16.csv",
            train_size=500,
        ),
        "vqe": dict(
            experiment="vqe",
            ansatz=AnsatzSpec(AnsatzFamily.VQE_CUSTOM, 4, 3),
            optimizer=OptimizerConfig(OptimizerKind.GD, 0.5),
            steps=40,
            init="normal",
            hamiltonian="h2_0.7414.ham",
        ),
        "vqe_adam": dict(
            experiment="vqe",
            ansatz=AnsatzSpec(AnsatzFamily.VQE_CUSTOM, 4, 3),
            optimizer=OptimizerConfig(OptimizerKind.ADAM, 1e-3),
            steps=500,
            init="normal",
            hamiltonian="h2_0.7414.ham",
        ),
        "gradcheck": dict(
            experiment="gradcheck",
            ansatz=AnsatzSpec(hea, 4, 3),
            steps=1,
        ),
    }
    if name not in presets:
        raise InputError(f"unknown preset {name!r}; choose from {sorted(presets)}")
    return ExperimentConfig(**{**presets[name], **overrides})
