"""Domain repository interfaces."""

from .dataset_repository import DatasetRepository
from .result_repository import ResultRepository

__all__ = ["DatasetRepository", "ResultRepository"]
