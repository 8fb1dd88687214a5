"""Domain error hierarchy.

Every failure the library raises on purpose derives from ``TwoStageError`` so the
CLI can turn it into a structured error record.
"""

from typing import Any, Optional


class TwoStageError(Exception):
    """Base class for all expected failures."""

    def to_dict(self) -> dict[str, Any]:
        """Structured representation used by the CLI error record."""
        return {"error_type": type(self).__name__, "error": str(self)}


class ConfigError(TwoStageError):
    """Invalid run configuration or experimental design."""


class DataValidationError(TwoStageError):
    """A dataset failed validation during ingestion."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        cluster: Optional[str] = None,
    ) -> None:
        self.line = line
        self.cluster = cluster
        prefix = []
        if line is not None:
            prefix.append(f"line {line}")
        if cluster is not None:
            prefix.append(f"cluster {cluster!r}")
        super().__init__(f"{', '.join(prefix)}: {message}" if prefix else message)

    def to_dict(self) -> dict[str, Any]:
        record = super().to_dict()
        record["line"] = self.line
        record["cluster"] = self.cluster
        return record


class ModelDomainError(TwoStageError, ValueError):
    """An argument lies outside the domain of a density or parameter cell."""


class SamplerFault(TwoStageError):
    """The Gibbs sampler reached a state it cannot continue from."""

    def __init__(
        self,
        message: str,
        unit: Optional[int] = None,
        replication: Optional[int] = None,
    ) -> None:
        self.unit = unit
        self.replication = replication
        super().__init__(message)

    def to_dict(self) -> dict[str, Any]:
        record = super().to_dict()
        record["unit"] = self.unit
        record["replication"] = self.replication
        return record


class EstimandError(TwoStageError):
    """An estimand could not be evaluated or summarised."""
