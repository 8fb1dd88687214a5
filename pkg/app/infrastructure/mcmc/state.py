"""Chain settings and the state carried between Gibbs iterations."""

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from app.domain.entities import PotentialTables
from app.domain.exceptions import ConfigError
from app.domain.services.strata import CANONICAL_CELLS
from app.domain.value_objects import STRATA, OutcomeFamily


@dataclass(frozen=True)
class ChainConfig:
    """Iteration counts, thinning, seed and chain count.

    Attributes:
        iterations: Total Gibbs iterations per chain, burn-in included.
        burn_in: Leading iterations that are discarded.
        thin: Keep every ``thin``-th iteration after burn-in.
        seed: Master seed; chain ``k`` uses the ``k``-th child stream.
        chains: Number of independent chains.
        family: Outcome family fitted by the sampler.
    """

    iterations: int
    burn_in: int
    thin: int = 1
    seed: int = 20240101
    chains: int = 1
    family: OutcomeFamily = OutcomeFamily.LOGNORMAL

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise ConfigError(f"iterations must be positive, got {self.iterations}")
        if not 0 <= self.burn_in < self.iterations:
            raise ConfigError(
                f"burn_in must satisfy 0 <= burn_in < iterations, got {self.burn_in}"
            )
        if self.thin < 1:
            raise ConfigError(f"thin must be positive, got {self.thin}")
        if self.chains < 1:
            raise ConfigError(f"chains must be positive, got {self.chains}")

    @property
    def n_retained(self) -> int:
        """Retained draws per chain."""
        return (self.iterations - self.burn_in) // self.thin

    def is_retained(self, iteration: int) -> bool:
        """Whether 1-based ``iteration`` is kept."""
        offset = iteration - self.burn_in
        return offset > 0 and offset % self.thin == 0


@dataclass
class ParameterArrays:
    """Model parameters in array form: ``pi`` over strata, the rest over canonical cells."""

    pi: np.ndarray
    p: np.ndarray
    loc: np.ndarray
    scale: np.ndarray

    def copy(self) -> "ParameterArrays":
        return ParameterArrays(
            pi=self.pi.copy(), p=self.p.copy(), loc=self.loc.copy(), scale=self.scale.copy()
        )

    def named(self, family: OutcomeFamily) -> dict[str, float]:
        """Flat ``name -> value`` map, e.g. ``pi[cc]`` or ``mu[cc/z0/a0]``."""
        loc_name, scale_name = family.parameter_names
        values = {f"pi[{g.value}]": float(self.pi[g.index]) for g in STRATA}
        for i, key in enumerate(CANONICAL_CELLS):
            values[f"p[{key.label}]"] = float(self.p[i])
            values[f"{loc_name}[{key.label}]"] = float(self.loc[i])
            values[f"{scale_name}[{key.label}]"] = float(self.scale[i])
        return values


@dataclass
class PosteriorDraw:
    """One retained draw: parameters, strata and completed tables."""

    chain: int
    iteration: int
    params: ParameterArrays
    g: np.ndarray
    tables: PotentialTables
    estimands: dict[str, float] = field(default_factory=dict)

    def to_record(self, family: OutcomeFamily) -> dict[str, Any]:
        """Spool record: parameters and evaluated estimands (unit-level state is not kept)."""
        return {
            "chain": self.chain,
            "iteration": self.iteration,
            "params": self.params.named(family),
            "strata_counts": {
                g.value: int(c)
                for g, c in zip(STRATA, np.bincount(self.g, minlength=len(STRATA)))
            },
            "estimands": {k: _json_float(v) for k, v in self.estimands.items()},
        }


def _json_float(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None
