"""Two-stage completely randomized design."""

from dataclasses import dataclass

import numpy as np

from ..exceptions import ConfigError
from ..value_objects import AssignmentMechanism, Mechanism


@dataclass(frozen=True)
class DesignConfig:
    """Cluster sizes, the number of a1 clusters and the two assignment proportions."""

    cluster_sizes: tuple[int, ...]
    j1: int
    q0: float
    q1: float

    def __post_init__(self) -> None:
        """Validate counts and proportions."""
        n_clusters = len(self.cluster_sizes)
        if n_clusters < 2:
            raise ConfigError(f"a design needs at least 2 clusters, got {n_clusters}")
        if not 0 < self.j1 < n_clusters:
            raise ConfigError(f"J1 must satisfy 0 < J1 < J={n_clusters}, got {self.j1}")
        small = [n for n in self.cluster_sizes if n < 2]
        if small:
            raise ConfigError(f"every cluster needs at least 2 units, got sizes {small[:5]}")
        # Validates each proportion.
        AssignmentMechanism(Mechanism.A0, self.q0)
        AssignmentMechanism(Mechanism.A1, self.q1)
        if not self.q0 < self.q1:
            raise ConfigError(f"q0 must be below q1, got q0={self.q0}, q1={self.q1}")

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_sizes)

    @property
    def n_units(self) -> int:
        return int(sum(self.cluster_sizes))

    def q(self, mechanism: Mechanism) -> float:
        return self.q0 if mechanism is Mechanism.A0 else self.q1

    @classmethod
    def equal_clusters(cls, n_units: int, n_clusters: int, j1: int, q0: float, q1: float):
        """Design with sizes as equal as possible (the first ``n_units % J`` get one more)."""
        if n_clusters < 1 or n_units < n_clusters:
            raise ConfigError(f"cannot split {n_units} units into {n_clusters} clusters")
        base, extra = divmod(n_units, n_clusters)
        sizes = tuple(base + 1 if j < extra else base for j in range(n_clusters))
        return cls(cluster_sizes=sizes, j1=j1, q0=q0, q1=q1)


@dataclass(frozen=True)
class AssignmentRealization:
    """Realized cluster mechanisms and unit assignments.

    Attributes:
        cluster_mechanism: Mechanism index per cluster (0 for a0, 1 for a1).
        cluster: Cluster code per unit.
        z: Assignment per unit.
    """

    cluster_mechanism: np.ndarray
    cluster: np.ndarray
    z: np.ndarray

    @property
    def a(self) -> np.ndarray:
        """Mechanism index per unit."""
        return self.cluster_mechanism[self.cluster]
