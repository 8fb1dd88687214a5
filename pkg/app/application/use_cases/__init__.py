"""Application use cases."""

from .principal_strata import (
    BenchmarkUseCase,
    FitModelUseCase,
    SimulateDatasetUseCase,
    SummarizeUseCase,
    TruthUseCase,
)

__all__ = [
    "BenchmarkUseCase",
    "FitModelUseCase",
    "SimulateDatasetUseCase",
    "SummarizeUseCase",
    "TruthUseCase",
]
