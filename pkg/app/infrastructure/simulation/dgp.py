"""Synthetic two-stage experiments from a known zero-inflated outcome model."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.domain.constants import (
    DEFAULT_PROB_A0,
    DEFAULT_Q0,
    DEFAULT_Q1,
    GAMMA_CELLS,
    GAMMA_PI,
    LOGNORMAL_CELLS,
    LOGNORMAL_PI,
    RSBY_CELLS,
    RSBY_N_CLUSTERS,
    RSBY_N_UNITS,
)
from app.domain.entities import (
    AssignmentRealization,
    Dataset,
    DesignConfig,
    ModelParams,
    ObservedData,
    PotentialTables,
    UnitRecord,
)
from app.domain.exceptions import ConfigError, ModelDomainError
from app.domain.services.design import sample_assignment
from app.domain.services.potential_outcomes import draw_tables, table_violations
from app.domain.services.strata import N_STRATA, RECEIPT
from app.domain.value_objects import Mechanism, OutcomeFamily

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DgpConfig:
    """Data-generating process: outcome model, sample size, clusters and design.

    Attributes:
        params: True stratum probabilities and cell parameters (family included).
        n_units: Total number of units N.
        n_clusters: Number of clusters J.
        q0, q1: Within-cluster treated proportions under a0 and a1.
        prob_a0: Share of clusters assigned a0.
        cluster_sizes: Explicit sizes; sizes are as equal as possible when omitted.
    """

    params: ModelParams
    n_units: int
    n_clusters: int
    q0: float = DEFAULT_Q0
    q1: float = DEFAULT_Q1
    prob_a0: float = DEFAULT_PROB_A0
    cluster_sizes: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if not 0 < self.prob_a0 < 1:
            raise ConfigError(f"prob_a0 must lie in (0, 1), got {self.prob_a0}")
        if self.cluster_sizes is not None:
            if len(self.cluster_sizes) != self.n_clusters:
                raise ConfigError("cluster_sizes must have one entry per cluster")
            if sum(self.cluster_sizes) != self.n_units:
                raise ConfigError("cluster_sizes must add up to n_units")
        if self.design.n_units != self.n_units:
            raise ConfigError("design size does not match n_units")

    @property
    def family(self) -> OutcomeFamily:
        return self.params.family

    @property
    def j1(self) -> int:
        """Number of a1 clusters: J minus the rounded a0 share, kept in [1, J-1]."""
        j0 = math.floor(self.n_clusters * self.prob_a0 + 0.5)
        return int(min(max(self.n_clusters - j0, 1), self.n_clusters - 1))

    @property
    def design(self) -> DesignConfig:
        if self.cluster_sizes is not None:
            return DesignConfig(
                cluster_sizes=tuple(self.cluster_sizes), j1=self.j1, q0=self.q0, q1=self.q1
            )
        return DesignConfig.equal_clusters(
            self.n_units, self.n_clusters, self.j1, self.q0, self.q1
        )

    def with_size(self, n_units: int) -> "DgpConfig":
        """Same model and design proportions at a different sample size."""
        return DgpConfig(
            params=self.params,
            n_units=n_units,
            n_clusters=self.n_clusters,
            q0=self.q0,
            q1=self.q1,
            prob_a0=self.prob_a0,
        )

    @classmethod
    def lognormal(cls, n_units: int = 5000, n_clusters: int = 100, **kwargs) -> "DgpConfig":
        """Published log-normal setting."""
        params = ModelParams.from_table(OutcomeFamily.LOGNORMAL, LOGNORMAL_PI, LOGNORMAL_CELLS)
        return cls(params=params, n_units=n_units, n_clusters=n_clusters, **kwargs)

    @classmethod
    def gamma(cls, n_units: int = 5000, n_clusters: int = 100, **kwargs) -> "DgpConfig":
        """Published Gamma setting."""
        params = ModelParams.from_table(OutcomeFamily.GAMMA, GAMMA_PI, GAMMA_CELLS)
        return cls(params=params, n_units=n_units, n_clusters=n_clusters, **kwargs)

    @classmethod
    def rsby(cls, **kwargs) -> "DgpConfig":
        """Expenditure-shaped setting at the size of the field study."""
        params = ModelParams.from_table(OutcomeFamily.LOGNORMAL, LOGNORMAL_PI, RSBY_CELLS)
        return cls(params=params, n_units=RSBY_N_UNITS, n_clusters=RSBY_N_CLUSTERS, **kwargs)


@dataclass(frozen=True)
class SimulatedData:
    """A generated dataset together with its latent truth."""

    dataset: Dataset
    observed: ObservedData
    tables: PotentialTables
    g: np.ndarray
    assignment: AssignmentRealization
    design: DesignConfig


def generate_dataset(cfg: DgpConfig, rng: np.random.Generator) -> SimulatedData:
    """Draw strata, full potential tables and a design realization; read off the data.

    Units are laid out cluster by cluster; cluster ids are ``c0000``-style and
    unit ids ``u000000``-style, both zero padded.

    Raises:
        ModelDomainError: If a generated table breaks an exclusion restriction.
    """
    design = cfg.design
    n_units = design.n_units
    pi, p, loc, scale = cfg.params.as_arrays()
    g = rng.choice(N_STRATA, size=n_units, p=pi / pi.sum())
    full = draw_tables(cfg.family, g, p, loc, scale, rng, observed_slot=np.zeros(n_units, int))
    assignment = sample_assignment(design, rng)
    a = assignment.a
    z = assignment.z
    slot = z + 2 * a
    tables = PotentialTables(y=full.y, observed_slot=slot)
    broken = table_violations(tables, g)
    if broken.size:
        raise ModelDomainError(f"generated table violates exclusion restriction at unit {broken[0]}")

    rows = np.arange(n_units)
    d = RECEIPT[g, slot]
    y = tables.y[rows, slot]
    width = len(str(design.n_clusters))
    unit_width = len(str(n_units))
    records = [
        UnitRecord(
            cluster=f"c{assignment.cluster[i]:0{width}d}",
            unit=f"u{i:0{unit_width}d}",
            mechanism=Mechanism.from_index(a[i]),
            z=int(z[i]),
            d=int(d[i]),
            y=float(y[i]),
        )
        for i in range(n_units)
    ]
    dataset = Dataset(records=records)
    logger.debug(
        f"[Simulate] Generated {cfg.family.value} dataset: N={n_units}, J={design.n_clusters}, "
        f"zeros={int(np.sum(y == 0))}"
    )
    return SimulatedData(
        dataset=dataset,
        observed=dataset.to_arrays(),
        tables=tables,
        g=g,
        assignment=assignment,
        design=design,
    )
