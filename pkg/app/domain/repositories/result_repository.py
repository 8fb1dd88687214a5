"""Result artifact storage interface."""

from abc import ABC, abstractmethod
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any


class ResultRepository(ABC):
    """Writes JSON documents and flat tables under an output directory."""

    @abstractmethod
    def write_json(self, name: str, payload: Mapping[str, Any]) -> Path:
        """Write ``payload`` as ``name`` and return the path written."""

    @abstractmethod
    def write_table(self, name: str, rows: Sequence[Mapping[str, Any]]) -> Path:
        """Write ``rows`` as a CSV table and return the path written."""
