"""Command line entry point: ``qadaprune {barren,classify,vqe,gradcheck}``.

Each subcommand starts from the matching preset (``classify`` uses the Iris
one) unless ``--config`` names a YAML file mirroring ``ExperimentConfig``.
Records go out as JSON-lines, to ``--out`` or stdout.

Exit codes: 0 success, 2 bad config or input, 3 numeric failure (including a
failed gradient check).
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from pathlib import Path

from ..errors import CapabilityError, InputError, NumericError
from .config import load_config, preset
from .gradcheck import run_gradcheck
from .runner import SCHEMA_VERSION, JsonLinesSink, run_experiment

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
GRADCHECK_TOL = 1e-4

_DEFAULT_PRESET = {"barren": "barren", "classify": "iris", "vqe": "vqe", "gradcheck": "gradcheck"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qadaprune", description="Variational circuit training with QAdaPrune.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in [
        ("barren", "identity learning on the hardware-efficient ansatz"),
        ("classify", "Iris (l2) or 16-feature image (bce) classification"),
        ("vqe", "ground-state energy of a Pauli-sum Hamiltonian"),
        ("gradcheck", "shift rule vs central differences on random circuits"),
    ]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, help="YAML file with ExperimentConfig fields")
        p.add_argument("--seed", type=int, help="master seed (overrides the config)")
        p.add_argument("--out", type=Path, help="JSON-lines output path (default: stdout)")
        p.add_argument("--no-prune", action="store_true", help="disable pruning")
        p.add_argument("--quiet", action="store_true", help="no summary on stderr")
    return parser


def _resolve_config(args):
    cfg = load_config(args.config) if args.config else preset(_DEFAULT_PRESET[args.command])
    if cfg.experiment != args.command:
        raise InputError(f"config is for {cfg.experiment!r}, not {args.command!r}")
    if args.seed is not None:
        if args.seed < 0 or args.seed >= 2**64:
            raise InputError("seed must be an unsigned 64-bit integer")
        cfg = cfg.with_overrides(seed=args.seed)
    if args.no_prune:
        cfg = cfg.without_pruning()
    return cfg


@contextmanager
def _open_out(path):
    if path is None:
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None
    with fh:
        yield fh


def _gradcheck(cfg, fh, quiet) -> int:
    def emit(trial):
        fh.write(json.dumps(trial.to_dict()) + "\n")

    trials = run_gradcheck(cfg.gradcheck_trials, cfg.seed, sink=emit)
    worst = max(t.max_abs_error for t in trials)
    ok = worst < GRADCHECK_TOL
    fh.write(json.dumps({"v": SCHEMA_VERSION, "kind": "summary", "experiment": "gradcheck",
                         "trials": len(trials), "max_abs_error": worst, "passed": ok}) + "\n")
    if not quiet:
        print(f"gradcheck: {len(trials)} trials, max abs error {worst:.3e}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_NUMERIC


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        out = args.out if args.out is not None else cfg.output
        with _open_out(out) as fh:
            if cfg.experiment == "gradcheck":
                return _gradcheck(cfg, fh, args.quiet)
            result = run_experiment(cfg, JsonLinesSink(fh))
        if not args.quiet:
            s = result.summary
            print(f"{s.experiment}: final cost {s.final_cost:.6f} after {s.total_steps} steps, "
                  f"pruned {s.n_frozen}/{s.n_params}, {s.total_evaluations} evaluations", file=sys.stderr)
        return EXIT_OK
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (InputError, CapabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
