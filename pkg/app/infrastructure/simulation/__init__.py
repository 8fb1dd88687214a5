"""Synthetic data, super-population truths and frequentist-property studies."""

from .dgp import DgpConfig, SimulatedData, generate_dataset
from .study import SimMetrics, StudyConfig, run_sample_size_study, run_study
from .truths import Truth, superpop_truth_analytic, superpop_truth_bruteforce, superpop_truths

__all__ = [
    "DgpConfig",
    "SimMetrics",
    "SimulatedData",
    "StudyConfig",
    "Truth",
    "generate_dataset",
    "run_sample_size_study",
    "run_study",
    "superpop_truth_analytic",
    "superpop_truth_bruteforce",
    "superpop_truths",
]
