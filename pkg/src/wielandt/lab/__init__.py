"""Experiment harness, flat-file I/O and the command line interface."""

from .experiment import (
    ExperimentConfig,
    ExperimentKind,
    ExperimentRow,
    ExperimentSummary,
    run_experiment,
    summarize,
)
from .io import emit_csv, emit_matrices, emit_peps, parse_csv, parse_matrices, parse_peps
from .plot import emit_plot

__all__ = [
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentRow",
    "ExperimentSummary",
    "emit_csv",
    "emit_matrices",
    "emit_peps",
    "emit_plot",
    "parse_csv",
    "parse_matrices",
    "parse_peps",
    "run_experiment",
    "summarize",
]
