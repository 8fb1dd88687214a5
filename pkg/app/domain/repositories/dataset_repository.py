"""Dataset storage interface."""

from abc import ABC, abstractmethod
from pathlib import Path

from ..entities.dataset import Dataset


class DatasetRepository(ABC):
    """Loads and stores observed datasets."""

    @abstractmethod
    def load(self, path: Path) -> Dataset:
        """Read and validate a dataset.

        Raises:
            DataValidationError: If any record is malformed.
        """

    @abstractmethod
    def save(self, dataset: Dataset, path: Path) -> None:
        """Write a dataset so that ``load`` reproduces it exactly."""
