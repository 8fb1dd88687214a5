"""Zero-inflated outcome families: densities, sampling and means.

Zero is a genuine point mass and is detected exactly (``y == 0``).
"""

import numpy as np
from scipy import stats

from ..entities.model_params import GammaCell, LogNormalCell, OutcomeCell
from ..exceptions import ModelDomainError
from ..value_objects import OutcomeFamily


def positive_logpdf(
    family: OutcomeFamily, y: np.ndarray, loc: np.ndarray, scale: np.ndarray
) -> np.ndarray:
    """Log density of the positive component at ``y > 0`` (broadcasts)."""
    y = np.asarray(y, dtype=float)
    if family is OutcomeFamily.LOGNORMAL:
        log_y = np.log(y)
        return stats.norm.logpdf(log_y, loc=loc, scale=np.sqrt(scale)) - log_y
    return stats.gamma.logpdf(y, a=loc, scale=scale)


def log_density_arrays(
    family: OutcomeFamily,
    y: np.ndarray,
    p: np.ndarray,
    loc: np.ndarray,
    scale: np.ndarray,
) -> np.ndarray:
    """Vectorised zero-inflated log density; ``y`` must already be nonnegative."""
    y = np.asarray(y, dtype=float)
    p, loc, scale = np.broadcast_arrays(
        np.asarray(p, dtype=float), np.asarray(loc, dtype=float), np.asarray(scale, dtype=float)
    )
    y, p, loc, scale = np.broadcast_arrays(y, p, loc, scale)
    is_zero = y == 0
    # Positive part evaluated at a harmless placeholder where y is zero.
    y_pos = np.where(is_zero, 1.0, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        zero_part = np.log(p)
        positive = np.log1p(-p) + positive_logpdf(family, y_pos, loc, scale)
    return np.where(is_zero, zero_part, positive)


def log_density(y: float, cell: OutcomeCell) -> float:
    """Log density of one outcome under a cell; ``-inf`` for impossible values.

    Raises:
        ModelDomainError: If ``y`` is negative or the cell is degenerate (``sigma2 == 0``).
    """
    if not y >= 0:
        raise ModelDomainError(f"outcomes must be nonnegative, got {y}")
    if isinstance(cell, LogNormalCell) and cell.sigma2 == 0:
        raise ModelDomainError("a log-normal cell with sigma2 == 0 has no density")
    value = log_density_arrays(cell.family, np.asarray(y), cell.p, cell.loc, cell.scale)
    return float(value)


def sample_outcomes(
    family: OutcomeFamily,
    p: np.ndarray,
    loc: np.ndarray,
    scale: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """One outcome per element of the broadcast (p, loc, scale) arrays."""
    p, loc, scale = np.broadcast_arrays(
        np.asarray(p, dtype=float), np.asarray(loc, dtype=float), np.asarray(scale, dtype=float)
    )
    is_zero = rng.random(p.shape) < p
    if family is OutcomeFamily.LOGNORMAL:
        positive = np.exp(rng.normal(loc, np.sqrt(scale)))
    else:
        positive = rng.gamma(loc, scale)
    return np.where(is_zero, 0.0, positive)


def sample_outcome(cell: OutcomeCell, rng: np.random.Generator) -> float:
    """Draw one outcome: 0 with probability ``p``, else from the positive component."""
    return float(sample_outcomes(cell.family, cell.p, cell.loc, cell.scale, rng))


def positive_mean(family: OutcomeFamily, loc, scale):
    """Mean of the positive component (scalar or array)."""
    if family is OutcomeFamily.LOGNORMAL:
        return np.exp(np.asarray(loc) + np.asarray(scale) / 2.0)
    return np.asarray(loc) * np.asarray(scale)


def mixture_mean(cell: OutcomeCell) -> float:
    """Mean of the zero-inflated outcome: ``(1 - p)`` times the positive-part mean."""
    if isinstance(cell, (LogNormalCell, GammaCell)):
        return float((1.0 - cell.p) * positive_mean(cell.family, cell.loc, cell.scale))
    raise ModelDomainError(f"unsupported cell type {type(cell).__name__}")
