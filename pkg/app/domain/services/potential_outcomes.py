"""Drawing and checking per-unit potential outcome tables."""

from typing import Optional

import numpy as np

from ..entities.potential_table import PotentialTables
from ..value_objects import OutcomeFamily
from .outcome_model import sample_outcomes
from .strata import CANONICAL_SLOT, CELL_INDEX


def draw_tables(
    family: OutcomeFamily,
    g: np.ndarray,
    p: np.ndarray,
    loc: np.ndarray,
    scale: np.ndarray,
    rng: np.random.Generator,
    observed_slot: np.ndarray,
    observed_y: Optional[np.ndarray] = None,
) -> PotentialTables:
    """Draw every potential outcome from the stratum's cells.

    Collapsed slots copy their canonical slot. When ``observed_y`` is given, the
    observed slot and everything collapsed with it keep the observed value.
    """
    n_units = g.shape[0]
    rows = np.arange(n_units)[:, None]
    cells = CELL_INDEX[g]
    canonical = CANONICAL_SLOT[g]
    draws = sample_outcomes(family, p[cells], loc[cells], scale[cells], rng)
    y = draws[rows, canonical]
    if observed_y is not None:
        observed_canonical = canonical[np.arange(n_units), observed_slot]
        y = np.where(canonical == observed_canonical[:, None], observed_y[:, None], y)
    return PotentialTables(y=y, observed_slot=np.asarray(observed_slot))


def table_violations(
    tables: PotentialTables, g: np.ndarray, observed_y: Optional[np.ndarray] = None
) -> np.ndarray:
    """Indices of units whose table breaks a collapse equality, sign or observed value."""
    rows = np.arange(tables.n_units)[:, None]
    canonical = CANONICAL_SLOT[g]
    bad = np.any(tables.y[rows, canonical] != tables.y, axis=1)
    bad |= np.any(tables.y < 0, axis=1)
    if observed_y is not None:
        bad |= tables.observed != observed_y
    return np.flatnonzero(bad)
