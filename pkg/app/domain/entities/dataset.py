"""Observed two-stage experiment dataset."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..exceptions import DataValidationError
from ..value_objects import Mechanism


@dataclass(frozen=True)
class UnitRecord:
    """One experimental unit's observed (cluster, unit, A, Z, D, Y)."""

    cluster: str
    unit: str
    mechanism: Mechanism
    z: int
    d: int
    y: float
    line: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        """Validate binary fields and the outcome sign."""
        if self.z not in (0, 1):
            raise DataValidationError(f"z must be 0 or 1, got {self.z!r}", line=self.line)
        if self.d not in (0, 1):
            raise DataValidationError(f"d must be 0 or 1, got {self.d!r}", line=self.line)
        if not np.isfinite(self.y):
            raise DataValidationError(f"y must be finite, got {self.y!r}", line=self.line)
        if self.y < 0:
            raise DataValidationError(f"y must be nonnegative, got {self.y!r}", line=self.line)


@dataclass(frozen=True)
class ObservedData:
    """Column view of a dataset used by the sampler and the estimands.

    Clusters are coded 0..J-1 in order of first appearance.
    """

    a: np.ndarray
    z: np.ndarray
    d: np.ndarray
    y: np.ndarray
    cluster: np.ndarray
    cluster_ids: tuple[str, ...]
    unit_ids: tuple[str, ...]
    cluster_sizes: np.ndarray
    cluster_mechanism: np.ndarray
    treated_counts: np.ndarray

    @property
    def n_units(self) -> int:
        return int(self.y.shape[0])

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_ids)

    @property
    def observed_slot(self) -> np.ndarray:
        """Slot index of the observed potential outcome per unit."""
        return self.z + 2 * self.a


@dataclass
class Dataset:
    """Validated collection of unit records."""

    records: list[UnitRecord]
    cluster_index: dict[str, list[int]] = field(init=False, default_factory=dict)

    def __post_init__(self) -> None:
        """Check per-cluster mechanism consistency and key uniqueness."""
        if not self.records:
            raise DataValidationError("dataset has no records")
        seen: set[tuple[str, str]] = set()
        mechanisms: dict[str, Mechanism] = {}
        for i, record in enumerate(self.records):
            key = (record.cluster, record.unit)
            if key in seen:
                raise DataValidationError(
                    f"duplicate unit {record.unit!r}", line=record.line, cluster=record.cluster
                )
            seen.add(key)
            known = mechanisms.setdefault(record.cluster, record.mechanism)
            if known is not record.mechanism:
                raise DataValidationError(
                    f"mixed mechanism labels {known.value} and {record.mechanism.value}",
                    line=record.line,
                    cluster=record.cluster,
                )
            self.cluster_index.setdefault(record.cluster, []).append(i)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def n_clusters(self) -> int:
        return len(self.cluster_index)

    def to_arrays(self) -> ObservedData:
        """Build the column view."""
        codes = {cluster: j for j, cluster in enumerate(self.cluster_index)}
        cluster = np.fromiter((codes[r.cluster] for r in self.records), dtype=np.int64)
        a = np.fromiter((r.mechanism.index for r in self.records), dtype=np.int64)
        z = np.fromiter((r.z for r in self.records), dtype=np.int64)
        d = np.fromiter((r.d for r in self.records), dtype=np.int64)
        y = np.fromiter((r.y for r in self.records), dtype=np.float64)
        n_clusters = len(codes)
        sizes = np.bincount(cluster, minlength=n_clusters)
        cluster_mechanism = np.zeros(n_clusters, dtype=np.int64)
        cluster_mechanism[cluster] = a
        for arr in (cluster, a, z, d, y, sizes, cluster_mechanism):
            arr.setflags(write=False)
        treated = np.bincount(cluster, weights=z, minlength=n_clusters).astype(np.int64)
        treated.setflags(write=False)
        return ObservedData(
            a=a,
            z=z,
            d=d,
            y=y,
            cluster=cluster,
            cluster_ids=tuple(codes),
            unit_ids=tuple(r.unit for r in self.records),
            cluster_sizes=sizes,
            cluster_mechanism=cluster_mechanism,
            treated_counts=treated,
        )
