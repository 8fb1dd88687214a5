"""Gibbs sampler, chain running and convergence diagnostics."""

from .diagnostics import TraceSummary, diagnostics
from .gibbs import GibbsSampler
from .runner import ChainJob, ChainResult, run_chains
from .state import ChainConfig, ParameterArrays, PosteriorDraw

__all__ = [
    "ChainConfig",
    "ChainJob",
    "ChainResult",
    "GibbsSampler",
    "ParameterArrays",
    "PosteriorDraw",
    "TraceSummary",
    "diagnostics",
    "run_chains",
]
