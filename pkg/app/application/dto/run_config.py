"""Run configuration: one JSON document validated before any computation."""

import json
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from app.domain.constants import (
    DEFAULT_ESTIMANDS,
    DEFAULT_N_CLUSTERS,
    DEFAULT_PROB_A0,
    DEFAULT_Q0,
    DEFAULT_Q1,
    DEFAULT_SAMPLE_SIZES,
)
from app.domain.entities import ModelParams, Priors
from app.domain.exceptions import ConfigError, ModelDomainError
from app.domain.value_objects import EstimandRequest, OutcomeFamily
from app.infrastructure.mcmc.state import ChainConfig
from app.infrastructure.simulation.dgp import DgpConfig


class DesignSection(BaseModel):
    """Assignment proportions of the two mechanisms and the cluster split."""

    q0: float = Field(default=DEFAULT_Q0, gt=0, lt=1)
    q1: float = Field(default=DEFAULT_Q1, gt=0, lt=1)
    prob_a0: float = Field(default=DEFAULT_PROB_A0, gt=0, lt=1)

    @model_validator(mode="after")
    def check_order(self) -> "DesignSection":
        if not self.q0 < self.q1:
            raise ValueError(f"q0 must be below q1, got q0={self.q0}, q1={self.q1}")
        return self


class PriorsSection(BaseModel):
    """Prior hyperparameters; see ``Priors`` for meanings."""

    dirichlet_alpha: list[float] = Field(default_factory=lambda: [1.0] * 6)
    beta_a: float = Field(default=1.0, gt=0)
    beta_b: float = Field(default=1.0, gt=0)
    mu_mean: float = 0.0
    mu_var: float = Field(default=100.0, gt=0)
    ig_shape: float = Field(default=0.01, gt=0)
    ig_scale: float = Field(default=0.01, gt=0)
    ig_shape_uses_half_count: bool = False
    gamma_rate_shape: float = Field(default=0.01, gt=0)
    gamma_rate_rate: float = Field(default=0.01, gt=0)
    alpha_prior_shape: float = Field(default=1.0, gt=0)
    alpha_prior_rate: float = Field(default=0.01, gt=0)
    alpha_step: float = Field(default=0.1, gt=0)
    alpha_target_acceptance: float = Field(default=0.44, gt=0, lt=1)

    @field_validator("dirichlet_alpha")
    @classmethod
    def validate_alpha(cls, v: list[float]) -> list[float]:
        if len(v) != 6 or any(a <= 0 for a in v):
            raise ValueError("dirichlet_alpha needs 6 positive entries")
        return v

    def to_priors(self) -> Priors:
        values = self.model_dump()
        values["dirichlet_alpha"] = tuple(values["dirichlet_alpha"])
        return Priors(**values)


class ChainSection(BaseModel):
    """Gibbs chain settings."""

    iterations: int = Field(default=4000, ge=1)
    burn_in: int = Field(default=2000, ge=0)
    thin: int = Field(default=1, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)
    chains: int = Field(default=1, ge=1)
    family: OutcomeFamily = OutcomeFamily.LOGNORMAL

    @model_validator(mode="after")
    def check_burn_in(self) -> "ChainSection":
        if self.burn_in >= self.iterations:
            raise ValueError(
                f"burn_in must be below iterations, got {self.burn_in} >= {self.iterations}"
            )
        return self

    def to_chain_config(self, seed: int) -> ChainConfig:
        return ChainConfig(
            iterations=self.iterations,
            burn_in=self.burn_in,
            thin=self.thin,
            seed=seed,
            chains=self.chains,
            family=self.family,
        )


class DgpSection(BaseModel):
    """Synthetic data-generating process and study layout.

    ``preset`` selects the published parameter table of ``family`` or the
    expenditure-shaped ``rsby`` table; ``custom`` takes ``pi`` and ``cells``.
    """

    family: OutcomeFamily = OutcomeFamily.LOGNORMAL
    preset: Literal["published", "rsby", "custom"] = "published"
    pi: Optional[dict[str, float]] = None
    cells: Optional[dict[str, list[float]]] = None
    n_units: int = Field(default=5000, ge=4)
    n_clusters: int = Field(default=DEFAULT_N_CLUSTERS, ge=2)
    sample_sizes: list[int] = Field(default_factory=lambda: list(DEFAULT_SAMPLE_SIZES))
    n_sim: int = Field(default=100, ge=2)
    fit_family: Optional[OutcomeFamily] = None
    truth: Literal["published", "exact", "bruteforce"] = "published"
    bruteforce_draws: Optional[int] = Field(default=None, ge=1000)

    @model_validator(mode="after")
    def check_custom(self) -> "DgpSection":
        if self.preset == "custom" and (self.pi is None or self.cells is None):
            raise ValueError("preset 'custom' requires pi and cells")
        if self.preset == "rsby" and self.family is not OutcomeFamily.LOGNORMAL:
            raise ValueError("preset 'rsby' is log-normal")
        return self

    def to_dgp_config(self, design: Optional[DesignSection] = None) -> DgpConfig:
        """Build the DGP; ``rsby`` fixes its own size and cluster count."""
        design = design or DesignSection()
        kwargs = {"q0": design.q0, "q1": design.q1, "prob_a0": design.prob_a0}
        try:
            if self.preset == "rsby":
                return DgpConfig.rsby(**kwargs)
            if self.preset == "custom":
                params = ModelParams.from_table(
                    self.family, self.pi, {k: tuple(v) for k, v in self.cells.items()}
                )
                return DgpConfig(
                    params=params, n_units=self.n_units, n_clusters=self.n_clusters, **kwargs
                )
            factory = DgpConfig.lognormal if self.family is OutcomeFamily.LOGNORMAL else DgpConfig.gamma
            return factory(n_units=self.n_units, n_clusters=self.n_clusters, **kwargs)
        except (ModelDomainError, TypeError) as e:
            raise ConfigError(f"invalid dgp section: {e}") from e


class EstimandSection(BaseModel):
    """Requested estimands by result key."""

    requests: list[str] = Field(default_factory=lambda: list(DEFAULT_ESTIMANDS))

    @field_validator("requests")
    @classmethod
    def validate_requests(cls, v: list[str]) -> list[str]:
        if not v:
            raise ValueError("at least one estimand is required")
        keys = []
        for text in v:
            try:
                keys.append(EstimandRequest.parse(text).key)
            except ConfigError as e:
                raise ValueError(str(e)) from e
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate estimand requests")
        return keys

    def parsed(self) -> list[EstimandRequest]:
        return [EstimandRequest.parse(key) for key in self.requests]


class OutputSection(BaseModel):
    """Where artifacts go; ``dir`` falls back to the OUTPUT_DIR setting."""

    dir: Optional[Path] = None
    spool: bool = True


class RunConfig(BaseModel):
    """Complete run configuration."""

    design: Optional[DesignSection] = None
    priors: PriorsSection = Field(default_factory=PriorsSection)
    chain: ChainSection = Field(default_factory=ChainSection)
    dgp: Optional[DgpSection] = None
    estimands: EstimandSection = Field(default_factory=EstimandSection)
    output: OutputSection = Field(default_factory=OutputSection)

    model_config = {"extra": "forbid"}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunConfig":
        """Validate a parsed document.

        Raises:
            ConfigError: Listing every offending field.
        """
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}"
                for err in e.errors()
            )
            raise ConfigError(f"invalid run config: {problems}") from e

    @classmethod
    def from_file(cls, path: Optional[Path]) -> "RunConfig":
        """Load a config file; ``None`` gives all defaults."""
        if path is None:
            return cls()
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file {path} is not valid JSON: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError("config document must be a JSON object")
        return cls.from_dict(data)

    def resolved(self, seed: int) -> dict[str, Any]:
        """Every field with defaults filled in and the effective seed."""
        document = self.model_dump(mode="json")
        document["chain"]["seed"] = seed
        return document
