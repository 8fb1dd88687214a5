"""Data Transfer Objects."""

from .run_config import (
    ChainSection,
    DesignSection,
    DgpSection,
    EstimandSection,
    OutputSection,
    PriorsSection,
    RunConfig,
)

__all__ = [
    "ChainSection",
    "DesignSection",
    "DgpSection",
    "EstimandSection",
    "OutputSection",
    "PriorsSection",
    "RunConfig",
]
