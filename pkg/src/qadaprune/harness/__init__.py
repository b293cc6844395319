"""Experiment runners for the barren-plateau, classification and VQE studies."""
from .config import ExperimentConfig, load_config, preset
from .data import Dataset, data_path, load_dataset_csv, load_hamiltonian
from .losses import BCELoss, L2Loss, identity_cost, loss_bce, loss_l2, mnist_readout
from .runner import JsonLinesSink, RunResult, RunSummary, TrainRecord, run_experiment, train
from .tasks import build_task, predict_accuracy
from .vqe import exact_diag, hf_state, vqe_energy
