"""Compliance type (principal stratum) value object."""

from enum import Enum

from .mechanism import Mechanism


class ComplianceType(str, Enum):
    """Latent compliance stratum.

    The first character is the behavior under a0, the second under a1:
    ``c`` complier, ``a`` always-taker, ``n`` never-taker.
    """

    CC = "cc"
    AA = "aa"
    NN = "nn"
    CA = "ca"
    NC = "nc"
    NA = "na"

    @property
    def index(self) -> int:
        """Position in the stratum simplex."""
        return _ORDER.index(self)

    def behavior(self, mechanism: Mechanism) -> str:
        """Behavior letter (``c``, ``a`` or ``n``) under a mechanism."""
        return self.value[mechanism.index]

    def is_complier_at(self, mechanism: Mechanism) -> bool:
        """Whether the unit complies with its assignment under ``mechanism``."""
        return self.behavior(mechanism) == "c"

    @classmethod
    def from_index(cls, index: int) -> "ComplianceType":
        """Inverse of ``index``."""
        return _ORDER[int(index)]


_ORDER: tuple[ComplianceType, ...] = tuple(ComplianceType)

STRATA: tuple[ComplianceType, ...] = _ORDER
