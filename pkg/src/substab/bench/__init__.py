"""Test matrices, matrix files and experiment reports."""
from .experiment import ExperimentReport, ExperimentSpec, StrategyResult, run_experiment
from .io import read_matrix, write_matrix
from .matrices import FIXTURE_NAMES, fixture, generate, grcar, scaled_ones

__all__ = [
    "ExperimentReport", "ExperimentSpec", "StrategyResult", "run_experiment",
    "read_matrix", "write_matrix", "FIXTURE_NAMES", "fixture", "generate", "grcar", "scaled_ones",
]
