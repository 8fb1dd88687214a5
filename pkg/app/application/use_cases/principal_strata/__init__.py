"""Principal-stratification use cases."""

from app.application.use_cases.principal_strata.benchmark_use_case import BenchmarkUseCase
from app.application.use_cases.principal_strata.fit_model_use_case import FitModelUseCase
from app.application.use_cases.principal_strata.simulate_dataset_use_case import (
    SimulateDatasetUseCase,
)
from app.application.use_cases.principal_strata.summarize_use_case import SummarizeUseCase
from app.application.use_cases.principal_strata.truth_use_case import TruthUseCase

__all__ = [
    "BenchmarkUseCase",
    "FitModelUseCase",
    "SimulateDatasetUseCase",
    "SummarizeUseCase",
    "TruthUseCase",
]
