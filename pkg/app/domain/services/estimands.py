"""Finite-population causal estimands over completed potential tables.

Population-level estimands average unit contrasts within clusters first and then
weight cluster means by ``n_j / N``. Complier estimands are flat averages over
the units that comply under the base mechanism.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..entities.dataset import ObservedData
from ..entities.design import DesignConfig
from ..entities.estimand_summary import EstimandSummary
from ..exceptions import EstimandError
from ..value_objects import EstimandKind, EstimandRequest, Mechanism, slot_index
from .design import treated_counts
from .strata import RECEIPT, complier_mask

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EstimandContext:
    """Cluster layout and the treated fractions ``K_j(a) / n_j`` per (cluster, mechanism)."""

    cluster: np.ndarray
    cluster_sizes: np.ndarray
    treated_fraction: np.ndarray

    def __post_init__(self) -> None:
        if self.treated_fraction.shape != (self.cluster_sizes.shape[0], 2):
            raise EstimandError("treated_fraction must be (n_clusters, 2)")

    @property
    def n_units(self) -> int:
        return int(self.cluster.shape[0])

    @classmethod
    def from_design(cls, cluster: np.ndarray, design: DesignConfig) -> "EstimandContext":
        """Treated fractions taken from the design for both mechanisms."""
        sizes = np.asarray(design.cluster_sizes, dtype=np.int64)
        fraction = np.column_stack(
            [treated_counts(sizes, design.q0) / sizes, treated_counts(sizes, design.q1) / sizes]
        )
        return cls(cluster=np.asarray(cluster), cluster_sizes=sizes, treated_fraction=fraction)

    @classmethod
    def from_observed(
        cls,
        data: ObservedData,
        q0: Optional[float] = None,
        q1: Optional[float] = None,
    ) -> "EstimandContext":
        """Own mechanism uses the observed treated count; the other uses ``q`` or the pooled rate.

        The pooled rate is the observed treated fraction over all clusters that ran
        the counterfactual mechanism.
        """
        sizes = data.cluster_sizes
        own = data.cluster_mechanism
        fraction = np.zeros((data.n_clusters, 2))
        for index, q in ((0, q0), (1, q1)):
            if q is None:
                clusters = own == index
                if not np.any(clusters):
                    raise EstimandError(
                        f"no cluster ran {Mechanism.from_index(index).value}; "
                        "a design proportion is required"
                    )
                q = data.treated_counts[clusters].sum() / sizes[clusters].sum()
                q = float(min(max(q, 1e-9), 1 - 1e-9))
            fraction[:, index] = treated_counts(sizes, q) / sizes
        mine = own == np.arange(2)[:, None]
        for index in range(2):
            fraction[mine[index], index] = data.treated_counts[mine[index]] / sizes[mine[index]]
        return cls(cluster=data.cluster, cluster_sizes=sizes, treated_fraction=fraction)


def population_average(values: np.ndarray, cluster: np.ndarray, cluster_sizes: np.ndarray) -> float:
    """Cluster means weighted by ``n_j / N``."""
    sums = np.bincount(cluster, weights=values, minlength=cluster_sizes.shape[0])
    cluster_means = sums / cluster_sizes
    return float(np.sum(cluster_sizes * cluster_means) / np.sum(cluster_sizes))


def unit_direct(y: np.ndarray, a: Mechanism) -> np.ndarray:
    """Unit-level Y(1, a) - Y(0, a)."""
    return y[:, slot_index(1, a)] - y[:, slot_index(0, a)]


def unit_spillover(y: np.ndarray, z: int) -> np.ndarray:
    """Unit-level Y(z, a1) - Y(z, a0)."""
    return y[:, slot_index(z, Mechanism.A1)] - y[:, slot_index(z, Mechanism.A0)]


def unit_overall(y: np.ndarray, ctx: EstimandContext) -> np.ndarray:
    """Unit-level Ybar(a1) - Ybar(a0) through the direct/spillover decomposition."""
    f0 = ctx.treated_fraction[ctx.cluster, 0]
    f1 = ctx.treated_fraction[ctx.cluster, 1]
    return f1 * unit_direct(y, Mechanism.A1) - f0 * unit_direct(y, Mechanism.A0) + unit_spillover(
        y, 0
    )


def unit_average(y: np.ndarray, ctx: EstimandContext, a: Mechanism) -> np.ndarray:
    """Unit-level Ybar(a) = f Y(1, a) + (1 - f) Y(0, a) with f = K_j(a) / n_j."""
    f = ctx.treated_fraction[ctx.cluster, a.index]
    return f * y[:, slot_index(1, a)] + (1 - f) * y[:, slot_index(0, a)]


def receipts(g: np.ndarray) -> np.ndarray:
    """Potential receipts per unit, ``(n_units, 4)`` in slot order."""
    return RECEIPT[g].astype(float)


def direct_effects(y: np.ndarray, g: np.ndarray, ctx: EstimandContext) -> dict[str, float]:
    """DEY(a) and DED(a) for both mechanisms."""
    d = receipts(g)
    result = {}
    for a in Mechanism:
        result[f"DEY({a.value})"] = population_average(
            unit_direct(y, a), ctx.cluster, ctx.cluster_sizes
        )
        result[f"DED({a.value})"] = population_average(
            unit_direct(d, a), ctx.cluster, ctx.cluster_sizes
        )
    return result


def spillover_effects(y: np.ndarray, g: np.ndarray, ctx: EstimandContext) -> dict[str, float]:
    """SEY(z) and SED(z) for both assignments."""
    d = receipts(g)
    result = {}
    for z in (0, 1):
        result[f"SEY({z})"] = population_average(
            unit_spillover(y, z), ctx.cluster, ctx.cluster_sizes
        )
        result[f"SED({z})"] = population_average(
            unit_spillover(d, z), ctx.cluster, ctx.cluster_sizes
        )
    return result


def overall_effect(y: np.ndarray, ctx: EstimandContext) -> float:
    """OEY(a0, a1)."""
    return population_average(unit_overall(y, ctx), ctx.cluster, ctx.cluster_sizes)


def complier_effects(
    y: np.ndarray, g: np.ndarray, ctx: EstimandContext, request: EstimandRequest
) -> float:
    """CADE, CASE or CAOE averaged over compliers at the request's base mechanism.

    Returns NaN when no unit complies under the base mechanism.
    """
    if not request.kind.is_complier_kind:
        raise EstimandError(f"{request.key} is not a complier estimand")
    compliers = complier_mask(request.base)[g]
    if not np.any(compliers):
        return float("nan")
    if request.kind is EstimandKind.CADE:
        values = unit_direct(y[compliers], request.target)
    elif request.kind is EstimandKind.CASE:
        values = unit_spillover(y[compliers], request.target)
    else:
        values = unit_overall(y, ctx)[compliers]
    return float(values.mean())


class EstimandEvaluator:
    """Evaluates a fixed request list on successive (tables, strata) draws.

    Unit-level contrasts are computed once per draw and shared across requests.
    """

    def __init__(self, requests: Sequence[EstimandRequest], ctx: EstimandContext) -> None:
        self.requests = list(requests)
        self.ctx = ctx
        self.keys = [r.key for r in self.requests]

    def evaluate(self, y: np.ndarray, g: np.ndarray) -> dict[str, float]:
        ctx = self.ctx
        d = receipts(g)
        direct = {a: unit_direct(y, a) for a in Mechanism}
        spill = {z: unit_spillover(y, z) for z in (0, 1)}
        overall = unit_overall(y, ctx)
        compliers = {a: complier_mask(a)[g] for a in Mechanism}

        def population(values: np.ndarray) -> float:
            return population_average(values, ctx.cluster, ctx.cluster_sizes)

        def flat(values: np.ndarray, base: Mechanism) -> float:
            mask = compliers[base]
            return float(values[mask].mean()) if np.any(mask) else float("nan")

        result = {}
        for request in self.requests:
            kind = request.kind
            if kind is EstimandKind.DEY:
                value = population(direct[request.target])
            elif kind is EstimandKind.DED:
                value = population(unit_direct(d, request.target))
            elif kind is EstimandKind.SEY:
                value = population(spill[request.target])
            elif kind is EstimandKind.SED:
                value = population(unit_spillover(d, request.target))
            elif kind is EstimandKind.OEY:
                value = population(overall)
            elif kind is EstimandKind.CADE:
                value = flat(direct[request.target], request.base)
            elif kind is EstimandKind.CASE:
                value = flat(spill[request.target], request.base)
            else:
                value = flat(overall, request.base)
            result[request.key] = value
        return result


def evaluate_requests(
    y: np.ndarray,
    g: np.ndarray,
    ctx: EstimandContext,
    requests: Iterable[EstimandRequest],
) -> dict[str, float]:
    """One-shot evaluation of ``requests`` on a single draw."""
    return EstimandEvaluator(list(requests), ctx).evaluate(y, g)


def summarize(values: Sequence[float], key: str = "estimand") -> EstimandSummary:
    """Posterior mean, median and 2.5%/97.5% quantiles (linear interpolation).

    Non-finite values are skipped and counted.

    Raises:
        EstimandError: If fewer than two finite values remain.
    """
    array = np.asarray(values, dtype=float)
    finite = array[np.isfinite(array)]
    skipped = int(array.size - finite.size)
    if finite.size < 2:
        raise EstimandError(f"{key}: need at least 2 finite draws, got {finite.size}")
    if skipped:
        logger.warning(f"[Estimands] {key}: skipped {skipped} draws with no compliers")
    q025, median, q975 = np.quantile(finite, [0.025, 0.5, 0.975], method="linear")
    return EstimandSummary(
        key=key,
        mean=float(finite.mean()),
        median=float(median),
        q025=float(q025),
        q975=float(q975),
        n_draws=int(finite.size),
        n_skipped=skipped,
    )
