"""Assignment mechanism value objects."""

from dataclasses import dataclass
from enum import Enum

from ..exceptions import ConfigError


class Mechanism(str, Enum):
    """Cluster-level assignment mechanism (treatment saturation)."""

    A0 = "a0"
    A1 = "a1"

    @property
    def index(self) -> int:
        """Position of the mechanism in slot layouts (a0 -> 0, a1 -> 1)."""
        return 0 if self is Mechanism.A0 else 1

    @classmethod
    def from_index(cls, index: int) -> "Mechanism":
        """Inverse of ``index``."""
        return cls.A0 if int(index) == 0 else cls.A1


@dataclass(frozen=True)
class AssignmentMechanism:
    """A mechanism label together with its within-cluster assignment proportion."""

    label: Mechanism
    q: float

    def __post_init__(self) -> None:
        """Validate proportion range."""
        if not 0 < self.q < 1:
            raise ConfigError(f"Assignment proportion must lie in (0, 1), got {self.q}")
