"""Per-unit potential outcome tables."""

from dataclasses import dataclass

import numpy as np


@dataclass
class PotentialTables:
    """Four potential outcomes per unit, slots ordered Y(0,a0), Y(1,a0), Y(0,a1), Y(1,a1).

    A slot is zero exactly where its zero indicator is on; the observed slot holds
    the observed outcome.
    """

    y: np.ndarray
    observed_slot: np.ndarray

    def __post_init__(self) -> None:
        if self.y.ndim != 2 or self.y.shape[1] != 4:
            raise ValueError(f"potential tables must be (n_units, 4), got {self.y.shape}")
        if self.observed_slot.shape != (self.y.shape[0],):
            raise ValueError("observed_slot must have one entry per unit")

    @property
    def n_units(self) -> int:
        return int(self.y.shape[0])

    @property
    def observed(self) -> np.ndarray:
        return self.y[np.arange(self.n_units), self.observed_slot]
