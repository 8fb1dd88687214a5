"""Application services."""

from .run_context import RunContext, RunOverrides

__all__ = [
    "RunContext",
    "RunOverrides",
]
