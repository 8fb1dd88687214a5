"""Compliance lattice: potential receipts and observed-data compatibility.

Besides the scalar lookups, the module exposes integer tables indexed by
``[stratum, slot]`` so the sampler can route whole unit vectors at once.
Slots follow ``CellKey.slot``: Y(0,a0)=0, Y(1,a0)=1, Y(0,a1)=2, Y(1,a1)=3.
"""

import numpy as np

from ..value_objects import (
    CANONICAL_CELLS,
    SLOTS,
    STRATA,
    ComplianceType,
    Mechanism,
    active_cell,
    cell_position,
    slot_index,
)


def potential_receipt(g: ComplianceType, z: int, a: Mechanism) -> int:
    """Treatment receipt D(z, a) of a unit in stratum ``g``."""
    behavior = g.behavior(a)
    if behavior == "a":
        return 1
    if behavior == "n":
        return 0
    return int(z)


def compatible_strata(a: Mechanism, z: int, d: int) -> frozenset[ComplianceType]:
    """Strata whose potential receipt under (z, a) equals the observed ``d``."""
    return frozenset(g for g in STRATA if potential_receipt(g, z, a) == int(d))


N_CELLS = len(CANONICAL_CELLS)
N_STRATA = len(STRATA)
N_SLOTS = len(SLOTS)


def _build_tables() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    receipt = np.zeros((N_STRATA, N_SLOTS), dtype=np.int8)
    canonical_slot = np.zeros((N_STRATA, N_SLOTS), dtype=np.int64)
    cell_index = np.zeros((N_STRATA, N_SLOTS), dtype=np.int64)
    # compatible[a, z, d, g]
    compatible = np.zeros((2, 2, 2, N_STRATA), dtype=bool)
    for g in STRATA:
        for z, a in SLOTS:
            s = slot_index(z, a)
            key = active_cell(g, z, a)
            receipt[g.index, s] = potential_receipt(g, z, a)
            canonical_slot[g.index, s] = key.slot
            cell_index[g.index, s] = cell_position(key)
            compatible[a.index, z, receipt[g.index, s], g.index] = True
    for table in (receipt, canonical_slot, cell_index, compatible):
        table.setflags(write=False)
    return receipt, canonical_slot, cell_index, compatible


RECEIPT, CANONICAL_SLOT, CELL_INDEX, COMPATIBLE = _build_tables()


def compatibility_mask(a: np.ndarray, z: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Boolean ``(n_units, 6)`` mask of strata compatible with each observed triple."""
    return COMPATIBLE[np.asarray(a), np.asarray(z), np.asarray(d)]


def complier_mask(base: Mechanism) -> np.ndarray:
    """Boolean stratum mask of compliers at the base mechanism."""
    return np.array([g.is_complier_at(base) for g in STRATA])
