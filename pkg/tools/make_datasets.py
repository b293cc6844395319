"""Regenerate the shipped classification CSVs.

iris_binary.csv: the first 100 Iris samples (setosa vs versicolor), four raw
features in cm, label -1 (setosa) / +1 (versicolor). Needs scikit-learn.

two_gaussian16.csv: 800 rows of 16 "pixel" features (a 4x4 image, row major)
drawn from two Gaussian blobs with distinct mean images, clipped to [0, pi],
label 0/1. The first 500 rows are meant for training and the last 300 for
validation, mirroring the 500/300 image subsets used for MNIST-2.

    python tools/make_datasets.py src/qadaprune/data
"""
import sys
from pathlib import Path

import numpy as np
from sklearn.datasets import load_iris


def iris_binary(path):
    iris = load_iris()
    x, y = iris.data[:100], iris.target[:100]
    labels = np.where(y == 0, -1, 1)
    header = "sepal_length,sepal_width,petal_length,petal_width,label"
    rows = [",".join(f"{v:.1f}" for v in xi) + f",{li:+d}" for xi, li in zip(x, labels)]
    Path(path).write_text(header + "\n" + "\n".join(rows) + "\n")


def two_gaussian16(path, n=800, seed=7):
    rng = np.random.default_rng(seed)
    mean0 = rng.uniform(0.3, 2.8, size=16)
    mean1 = np.clip(mean0 + rng.choice([-1.0, 1.0], size=16) * rng.uniform(0.4, 1.0, size=16), 0.0, np.pi)
    labels = rng.integers(0, 2, size=n)
    means = np.where(labels[:, None] == 1, mean1, mean0)
    x = np.clip(means + rng.normal(0.0, 0.45, size=(n, 16)), 0.0, np.pi)
    header = ",".join(f"p{i}" for i in range(16)) + ",label"
    rows = [",".join(f"{v:.5f}" for v in xi) + f",{li}" for xi, li in zip(x, labels)]
    Path(path).write_text(header + "\n" + "\n".join(rows) + "\n")


if __name__ == "__main__":
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "src/qadaprune/data")
    iris_binary(out / "iris_binary.csv")
    two_gaussian16(out / "two_gaussian16.csv")
