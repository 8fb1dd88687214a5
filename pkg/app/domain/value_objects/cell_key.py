"""Outcome parameter cell key."""

import re
from dataclasses import dataclass

from ..exceptions import ConfigError
from .compliance_type import STRATA, ComplianceType
from .mechanism import Mechanism

_LABEL_PATTERN = re.compile(r"^(cc|aa|nn|ca|nc|na)/z([01])/(a[01])$")


@dataclass(frozen=True)
class CellKey:
    """The (stratum, assignment, mechanism) index of an outcome parameter cell."""

    g: ComplianceType
    z: int
    a: Mechanism

    def __post_init__(self) -> None:
        """Validate the assignment value."""
        if self.z not in (0, 1):
            raise ConfigError(f"Assignment must be 0 or 1, got {self.z}")

    @property
    def slot(self) -> int:
        """Potential-outcome slot: Y(0,a0)=0, Y(1,a0)=1, Y(0,a1)=2, Y(1,a1)=3."""
        return slot_index(self.z, self.a)

    @property
    def label(self) -> str:
        """Stable text form, e.g. ``cc/z1/a0``."""
        return f"{self.g.value}/z{self.z}/{self.a.value}"

    @classmethod
    def parse(cls, label: str) -> "CellKey":
        """Parse the ``label`` form back into a key."""
        match = _LABEL_PATTERN.match(label.strip())
        if not match:
            raise ConfigError(f"Invalid cell label {label!r}; expected e.g. 'cc/z1/a0'")
        g, z, a = match.groups()
        return cls(g=ComplianceType(g), z=int(z), a=Mechanism(a))


def slot_index(z: int, a: Mechanism) -> int:
    """Slot index of Y(z, a) in a potential table."""
    return int(z) + 2 * a.index


SLOTS: tuple[tuple[int, Mechanism], ...] = (
    (0, Mechanism.A0),
    (1, Mechanism.A0),
    (0, Mechanism.A1),
    (1, Mechanism.A1),
)


def active_cell(g: ComplianceType, z: int, a: Mechanism) -> CellKey:
    """Canonical parameter cell of Y(z, a) for stratum ``g``.

    Where ``g`` does not comply under ``a`` the assignment has no effect on the
    outcome, so both assignments share the z=0 cell.
    """
    if not g.is_complier_at(a):
        return CellKey(g=g, z=0, a=a)
    return CellKey(g=g, z=int(z), a=a)


def canonical_cells() -> tuple[CellKey, ...]:
    """All canonical cells, stratum-major then slot order."""
    cells = []
    for g in STRATA:
        for z, a in SLOTS:
            key = active_cell(g, z, a)
            if key.z == z:
                cells.append(key)
    return tuple(cells)


CANONICAL_CELLS: tuple[CellKey, ...] = canonical_cells()

_CELL_POSITION = {key: i for i, key in enumerate(CANONICAL_CELLS)}


def cell_position(key: CellKey) -> int:
    """Index of a cell in ``CANONICAL_CELLS`` after canonicalisation."""
    return _CELL_POSITION[active_cell(key.g, key.z, key.a)]
