"""Convergence diagnostics for scalar traces: mean, MCSE, ESS and rank-normalised R-hat."""

from collections.abc import Mapping
from dataclasses import asdict, dataclass
from typing import Optional

import arviz as az
import numpy as np

from app.domain.exceptions import SamplerFault

# arviz returns nan below this many draws per chain.
_MIN_ARVIZ_DRAWS = 4


@dataclass(frozen=True)
class TraceSummary:
    """Diagnostics of one scalar parameter over all chains."""

    name: str
    mean: float
    mcse: float
    ess: float
    rhat: Optional[float]

    def to_dict(self) -> dict[str, object]:
        return asdict(self)


def summarize_trace(name: str, chains: np.ndarray) -> TraceSummary:
    """Diagnostics for one parameter from a ``(n_chains, n_draws)`` array.

    Constant traces report ESS = n, MCSE 0 and R-hat 1. Traces too short for
    arviz are treated as independent draws.
    """
    chains = np.atleast_2d(np.asarray(chains, dtype=float))
    flat = chains.ravel()
    multi_chain = chains.shape[0] >= 2
    sd = float(flat.std(ddof=1))

    if sd == 0.0:
        return TraceSummary(
            name=name,
            mean=float(flat.mean()),
            mcse=0.0,
            ess=float(flat.size),
            rhat=1.0 if multi_chain else None,
        )
    if chains.shape[1] < _MIN_ARVIZ_DRAWS:
        return TraceSummary(
            name=name,
            mean=float(flat.mean()),
            mcse=sd / np.sqrt(flat.size),
            ess=float(flat.size),
            rhat=None,
        )

    rhat = float(az.rhat(chains)) if multi_chain else None
    return TraceSummary(
        name=name,
        mean=float(flat.mean()),
        mcse=float(az.mcse(chains, method="mean")),
        ess=float(az.ess(chains, method="bulk")),
        rhat=rhat if rhat is None or np.isfinite(rhat) else None,
    )


def diagnostics(traces: Mapping[str, np.ndarray]) -> dict[str, TraceSummary]:
    """Summaries for every named trace of shape ``(n_chains, n_draws)``.

    Raises:
        SamplerFault: If fewer than two draws were retained per chain.
    """
    result = {}
    for name, chains in traces.items():
        chains = np.atleast_2d(np.asarray(chains, dtype=float))
        if chains.shape[1] < 2:
            raise SamplerFault(f"diagnostics need at least 2 retained draws, got {chains.shape[1]}")
        result[name] = summarize_trace(name, chains)
    return result
