"""Super-population truths of every estimand under a data-generating process.

The analytic path evaluates expectations from the cell means. By default the
complier averages use the published factorisation: at each (z, a) the pooled
non-zero probability of the complier strata times their pooled positive-part
mean. ``exact=True`` uses the true mixture mean instead. The brute-force path
simulates units and reports Monte-Carlo standard errors.
"""

import logging
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from app.domain.constants import DEFAULT_ESTIMANDS
from app.domain.exceptions import ModelDomainError
from app.domain.services.design import treated_counts
from app.domain.services.estimands import unit_direct, unit_spillover
from app.domain.services.outcome_model import positive_mean
from app.domain.services.potential_outcomes import draw_tables
from app.domain.services.strata import CELL_INDEX, N_STRATA, RECEIPT, complier_mask
from app.domain.value_objects import (
    EstimandKind,
    EstimandRequest,
    Mechanism,
    OutcomeFamily,
    slot_index,
)

from .dgp import DgpConfig

logger = logging.getLogger(__name__)

DEFAULT_BRUTEFORCE_DRAWS = {OutcomeFamily.LOGNORMAL: 10_000_000, OutcomeFamily.GAMMA: 1_000_000}


@dataclass(frozen=True)
class Truth:
    """A truth value with its Monte-Carlo standard error (``None`` when analytic)."""

    value: float
    se: Optional[float] = None

    def to_dict(self) -> dict[str, Optional[float]]:
        return asdict(self)


def treated_fractions(cfg: DgpConfig) -> tuple[float, float]:
    """Unit-weighted mean of ``K_j(a) / n_j`` for a0 and a1."""
    sizes = np.asarray(cfg.design.cluster_sizes)
    return (
        float(treated_counts(sizes, cfg.q0).sum() / sizes.sum()),
        float(treated_counts(sizes, cfg.q1).sum() / sizes.sum()),
    )


def _cell_tables(cfg: DgpConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """``(pi, p_slot, positive_mean_slot, mean_slot)`` with slot arrays shaped ``(6, 4)``."""
    pi, p, loc, scale = cfg.params.as_arrays()
    p_slot = p[CELL_INDEX]
    positive_slot = positive_mean(cfg.family, loc, scale)[CELL_INDEX]
    return pi, p_slot, positive_slot, (1 - p_slot) * positive_slot


def superpop_truth_analytic(cfg: DgpConfig, exact: bool = False) -> dict[str, Truth]:
    """Closed-form truths for all default estimands of a log-normal process.

    Raises:
        ModelDomainError: For the Gamma family; use ``superpop_truth_bruteforce``.
    """
    if cfg.family is not OutcomeFamily.LOGNORMAL:
        raise ModelDomainError(
            f"analytic truths are available for the log-normal family only, got {cfg.family.value}"
        )
    pi, p_slot, positive_slot, mean_slot = _cell_tables(cfg)
    receipt = RECEIPT.astype(float)
    f0, f1 = treated_fractions(cfg)

    def population(table: np.ndarray, z: int, a: Mechanism) -> float:
        return float(pi @ table[:, slot_index(z, a)])

    def complier(z: int, a: Mechanism, base: Mechanism) -> float:
        w = pi * complier_mask(base)
        w = w / w.sum()
        s = slot_index(z, a)
        if exact:
            return float(w @ mean_slot[:, s])
        return float((w @ (1 - p_slot[:, s])) * (w @ positive_slot[:, s]))

    truths: dict[str, float] = {}
    for a in Mechanism:
        truths[f"DEY({a.value})"] = population(mean_slot, 1, a) - population(mean_slot, 0, a)
        truths[f"DED({a.value})"] = population(receipt, 1, a) - population(receipt, 0, a)
    for z in (0, 1):
        truths[f"SEY({z})"] = population(mean_slot, z, Mechanism.A1) - population(
            mean_slot, z, Mechanism.A0
        )
        truths[f"SED({z})"] = population(receipt, z, Mechanism.A1) - population(
            receipt, z, Mechanism.A0
        )
    truths["OEY(a0,a1)"] = f1 * truths["DEY(a1)"] - f0 * truths["DEY(a0)"] + truths["SEY(0)"]
    for base in Mechanism:
        cade = {a: complier(1, a, base) - complier(0, a, base) for a in Mechanism}
        case = {z: complier(z, Mechanism.A1, base) - complier(z, Mechanism.A0, base) for z in (0, 1)}
        for a in Mechanism:
            truths[f"CADE({a.value};{base.value})"] = cade[a]
        for z in (0, 1):
            truths[f"CASE({z};{base.value})"] = case[z]
        truths[f"CAOE(a0,a1;{base.value})"] = (
            f1 * cade[Mechanism.A1] - f0 * cade[Mechanism.A0] + case[0]
        )
    return {key: Truth(value=truths[key]) for key in DEFAULT_ESTIMANDS}


class _MomentAccumulator:
    """Running sums for the ratio ``sum(num) / sum(den)`` and its delta-method error."""

    def __init__(self) -> None:
        self.n = 0
        self.sums = np.zeros(5)  # x, y, xx, yy, xy

    def add(self, den: np.ndarray, num: np.ndarray) -> None:
        self.n += den.size
        self.sums += [den.sum(), num.sum(), den @ den, num @ num, den @ num]

    def result(self) -> Truth:
        n = self.n
        mx, my, mxx, myy, mxy = self.sums / n
        if mx <= 0:
            return Truth(value=float("nan"), se=float("nan"))
        ratio = my / mx
        var_x, var_y, cov = mxx - mx**2, myy - my**2, mxy - mx * my
        var_ratio = (var_y - 2 * ratio * cov + ratio**2 * var_x) / (mx**2 * n)
        return Truth(value=float(ratio), se=float(np.sqrt(max(var_ratio, 0.0))))


def superpop_truth_bruteforce(
    cfg: DgpConfig,
    rng: np.random.Generator,
    m: Optional[int] = None,
    batch: int = 1_000_000,
) -> dict[str, Truth]:
    """Monte-Carlo expectations over ``m`` simulated units' full tables.

    Population estimands are plain means (denominator 1 per unit); complier
    estimands are ratios over the complier indicator.
    """
    m = m or DEFAULT_BRUTEFORCE_DRAWS[cfg.family]
    pi, p, loc, scale = cfg.params.as_arrays()
    f0, f1 = treated_fractions(cfg)
    requests = [EstimandRequest.parse(key) for key in DEFAULT_ESTIMANDS]
    acc = {r.key: _MomentAccumulator() for r in requests}
    done = 0
    while done < m:
        size = min(batch, m - done)
        g = rng.choice(N_STRATA, size=size, p=pi / pi.sum())
        y = draw_tables(cfg.family, g, p, loc, scale, rng, observed_slot=np.zeros(size, int)).y
        d = RECEIPT[g].astype(float)
        ones = np.ones(size)
        direct = {a: unit_direct(y, a) for a in Mechanism}
        spill = {z: unit_spillover(y, z) for z in (0, 1)}
        overall = f1 * direct[Mechanism.A1] - f0 * direct[Mechanism.A0] + spill[0]
        compliers = {a: complier_mask(a)[g].astype(float) for a in Mechanism}
        for r in requests:
            if r.kind is EstimandKind.DEY:
                acc[r.key].add(ones, direct[r.target])
            elif r.kind is EstimandKind.DED:
                acc[r.key].add(ones, unit_direct(d, r.target))
            elif r.kind is EstimandKind.SEY:
                acc[r.key].add(ones, spill[r.target])
            elif r.kind is EstimandKind.SED:
                acc[r.key].add(ones, unit_spillover(d, r.target))
            elif r.kind is EstimandKind.OEY:
                acc[r.key].add(ones, overall)
            else:
                c = compliers[r.base]
                if r.kind is EstimandKind.CADE:
                    acc[r.key].add(c, c * direct[r.target])
                elif r.kind is EstimandKind.CASE:
                    acc[r.key].add(c, c * spill[r.target])
                else:
                    acc[r.key].add(c, c * overall)
        done += size
        logger.debug(f"[Truth] Brute force: {done}/{m} units")
    return {key: acc[key].result() for key in DEFAULT_ESTIMANDS}


def superpop_truths(
    cfg: DgpConfig, rng: Optional[np.random.Generator] = None, m: Optional[int] = None
) -> dict[str, Truth]:
    """Analytic truths for log-normal processes, brute force otherwise."""
    if cfg.family is OutcomeFamily.LOGNORMAL:
        return superpop_truth_analytic(cfg)
    if rng is None:
        raise ModelDomainError("brute-force truths need a random generator")
    return superpop_truth_bruteforce(cfg, rng, m)


__all__ = [
    "Truth",
    "superpop_truth_analytic",
    "superpop_truth_bruteforce",
    "superpop_truths",
    "treated_fractions",
]
