"""Outcome-model parameter cells and the full parameter vector."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from ..exceptions import ModelDomainError
from ..value_objects import CANONICAL_CELLS, STRATA, CellKey, OutcomeFamily

_SIMPLEX_TOLERANCE = 1e-8


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ModelDomainError(f"zero-inflation probability must lie in [0, 1], got {p}")


@dataclass(frozen=True)
class LogNormalCell:
    """Zero-inflated log-normal cell: zero w.p. ``p``, else LogNormal(mu, sigma2).

    ``sigma2`` is the log-scale variance. ``sigma2 == 0`` is the degenerate
    limit (point mass at ``exp(mu)``); it has a mean but no density.
    """

    p: float
    mu: float
    sigma2: float

    def __post_init__(self) -> None:
        _check_probability(self.p)
        if not np.isfinite(self.mu):
            raise ModelDomainError(f"mu must be finite, got {self.mu}")
        if not self.sigma2 >= 0:
            raise ModelDomainError(f"sigma2 must be nonnegative, got {self.sigma2}")

    @property
    def family(self) -> OutcomeFamily:
        return OutcomeFamily.LOGNORMAL

    @property
    def loc(self) -> float:
        return self.mu

    @property
    def scale(self) -> float:
        return self.sigma2


@dataclass(frozen=True)
class GammaCell:
    """Zero-inflated Gamma cell: zero w.p. ``p``, else Gamma(shape=alpha, scale=theta)."""

    p: float
    alpha: float
    theta: float

    def __post_init__(self) -> None:
        _check_probability(self.p)
        if not self.alpha > 0:
            raise ModelDomainError(f"alpha must be positive, got {self.alpha}")
        if not self.theta > 0:
            raise ModelDomainError(f"theta must be positive, got {self.theta}")

    @property
    def family(self) -> OutcomeFamily:
        return OutcomeFamily.GAMMA

    @property
    def loc(self) -> float:
        return self.alpha

    @property
    def scale(self) -> float:
        return self.theta


OutcomeCell = Union[LogNormalCell, GammaCell]


def make_cell(family: OutcomeFamily, p: float, loc: float, scale: float) -> OutcomeCell:
    """Build a cell of ``family`` from its (p, loc, scale) triple."""
    if family is OutcomeFamily.LOGNORMAL:
        return LogNormalCell(p=float(p), mu=float(loc), sigma2=float(scale))
    return GammaCell(p=float(p), alpha=float(loc), theta=float(scale))


@dataclass(frozen=True)
class ModelParams:
    """Stratum simplex plus one cell per canonical (stratum, z, a) key."""

    family: OutcomeFamily
    pi: tuple[float, ...]
    cells: dict[CellKey, OutcomeCell]

    def __post_init__(self) -> None:
        """Validate the simplex and the cell key set."""
        pi = np.asarray(self.pi, dtype=float)
        if pi.shape != (len(STRATA),):
            raise ModelDomainError(f"pi must have {len(STRATA)} entries, got {pi.shape}")
        if np.any(pi < 0) or abs(pi.sum() - 1.0) > _SIMPLEX_TOLERANCE:
            raise ModelDomainError(f"pi must lie on the simplex, got {pi.tolist()}")
        if set(self.cells) != set(CANONICAL_CELLS):
            missing = sorted(k.label for k in set(CANONICAL_CELLS) - set(self.cells))
            extra = sorted(k.label for k in set(self.cells) - set(CANONICAL_CELLS))
            raise ModelDomainError(f"cell keys mismatch: missing={missing}, extra={extra}")
        for key, cell in self.cells.items():
            if cell.family is not self.family:
                raise ModelDomainError(f"cell {key.label} is not {self.family.value}")

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """``(pi, p, loc, scale)`` arrays in canonical cell order."""
        cells = [self.cells[key] for key in CANONICAL_CELLS]
        return (
            np.asarray(self.pi, dtype=float),
            np.array([c.p for c in cells], dtype=float),
            np.array([c.loc for c in cells], dtype=float),
            np.array([c.scale for c in cells], dtype=float),
        )

    @classmethod
    def from_table(
        cls,
        family: OutcomeFamily,
        pi: dict[str, float],
        cells: dict[str, tuple[float, float, float]],
    ) -> "ModelParams":
        """Build from text keys: ``pi`` by stratum value, ``cells`` by cell label."""
        try:
            pi_vec = tuple(float(pi[g.value]) for g in STRATA)
            parsed = {CellKey.parse(label): make_cell(family, *v) for label, v in cells.items()}
        except KeyError as e:
            raise ModelDomainError(f"missing stratum probability for {e}") from e
        return cls(family=family, pi=pi_vec, cells=parsed)
