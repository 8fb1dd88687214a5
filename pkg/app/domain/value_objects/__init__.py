"""Domain value objects."""

from .cell_key import (
    CANONICAL_CELLS,
    SLOTS,
    CellKey,
    active_cell,
    cell_position,
    slot_index,
)
from .compliance_type import STRATA, ComplianceType
from .estimand import EstimandKind, EstimandRequest
from .mechanism import AssignmentMechanism, Mechanism
from .outcome_family import OutcomeFamily

__all__ = [
    "AssignmentMechanism",
    "CANONICAL_CELLS",
    "CellKey",
    "ComplianceType",
    "EstimandKind",
    "EstimandRequest",
    "Mechanism",
    "OutcomeFamily",
    "SLOTS",
    "STRATA",
    "active_cell",
    "cell_position",
    "slot_index",
]
