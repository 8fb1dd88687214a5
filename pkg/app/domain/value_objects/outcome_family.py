"""Outcome family value object."""

from enum import Enum


class OutcomeFamily(str, Enum):
    """Positive-part distribution of the zero-inflated outcome model."""

    LOGNORMAL = "lognormal"
    GAMMA = "gamma"

    @property
    def parameter_names(self) -> tuple[str, str]:
        """Names of the two positive-part parameters, in storage order."""
        if self is OutcomeFamily.LOGNORMAL:
            return ("mu", "sigma2")
        return ("alpha", "theta")
