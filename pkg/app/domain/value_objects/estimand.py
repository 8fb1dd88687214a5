"""Causal estimand request value objects."""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from ..exceptions import ConfigError
from .mechanism import Mechanism


class EstimandKind(str, Enum):
    """Estimand abbreviations used in result keys."""

    DED = "DED"
    DEY = "DEY"
    SED = "SED"
    SEY = "SEY"
    OEY = "OEY"
    CADE = "CADE"
    CASE = "CASE"
    CAOE = "CAOE"

    @property
    def is_complier_kind(self) -> bool:
        """Whether the estimand averages over compliers at a base mechanism."""
        return self in (EstimandKind.CADE, EstimandKind.CASE, EstimandKind.CAOE)

    @property
    def target_is_mechanism(self) -> bool:
        """Whether the target argument is a mechanism (otherwise an assignment)."""
        return self in (EstimandKind.DED, EstimandKind.DEY, EstimandKind.CADE)


Target = Union[Mechanism, int, None]

_KEY_PATTERN = re.compile(r"^(DED|DEY|SED|SEY|OEY|CADE|CASE|CAOE)\(([^)]*)\)$")


@dataclass(frozen=True)
class EstimandRequest:
    """One requested estimand: its kind, target argument and base mechanism."""

    kind: EstimandKind
    target: Target = None
    base: Optional[Mechanism] = None

    def __post_init__(self) -> None:
        """Validate argument shape against the kind."""
        kind = self.kind
        if kind.is_complier_kind != (self.base is not None):
            raise ConfigError(f"{kind.value}: base mechanism is required iff complier kind")
        if kind in (EstimandKind.OEY, EstimandKind.CAOE):
            if self.target is not None:
                raise ConfigError(f"{kind.value} takes no target argument")
        elif kind.target_is_mechanism:
            if not isinstance(self.target, Mechanism):
                raise ConfigError(f"{kind.value} target must be a mechanism")
        elif isinstance(self.target, Mechanism) or self.target not in (0, 1):
            raise ConfigError(f"{kind.value} target must be an assignment 0 or 1")

    @property
    def key(self) -> str:
        """Stable result key, e.g. ``CADE(a1;a0)`` or ``OEY(a0,a1)``."""
        kind = self.kind
        if kind is EstimandKind.OEY:
            return "OEY(a0,a1)"
        if kind is EstimandKind.CAOE:
            return f"CAOE(a0,a1;{self.base.value})"
        target = self.target.value if isinstance(self.target, Mechanism) else str(self.target)
        if kind.is_complier_kind:
            return f"{kind.value}({target};{self.base.value})"
        return f"{kind.value}({target})"

    @classmethod
    def parse(cls, key: str) -> "EstimandRequest":
        """Parse a result key back into a request."""
        match = _KEY_PATTERN.match(key.replace(" ", ""))
        if not match:
            raise ConfigError(f"Invalid estimand key {key!r}")
        kind = EstimandKind(match.group(1))
        args = match.group(2)
        try:
            if kind is EstimandKind.OEY:
                if args not in ("", "a0,a1"):
                    raise ValueError(args)
                return cls(kind=kind)
            if kind is EstimandKind.CAOE:
                contrast, base = args.split(";")
                if contrast != "a0,a1":
                    raise ValueError(args)
                return cls(kind=kind, base=Mechanism(base))
            if kind.is_complier_kind:
                target, base = args.split(";")
                return cls(kind=kind, target=_parse_target(kind, target), base=Mechanism(base))
            return cls(kind=kind, target=_parse_target(kind, args))
        except ValueError as e:
            raise ConfigError(f"Invalid estimand key {key!r}: {e}") from e


def _parse_target(kind: EstimandKind, text: str) -> Target:
    if kind.target_is_mechanism:
        return Mechanism(text)
    if text not in ("0", "1"):
        raise ValueError(f"assignment must be 0 or 1, got {text!r}")
    return int(text)
