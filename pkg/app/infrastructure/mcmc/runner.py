"""Running chains and collecting parameter traces and estimand draws."""

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from app.domain.entities import EstimandSummary, ObservedData, Priors
from app.domain.services.estimands import EstimandContext, EstimandEvaluator, summarize
from app.domain.value_objects import EstimandRequest
from app.infrastructure.persistence.draw_spool import DrawSpool

from .diagnostics import TraceSummary, diagnostics
from .gibbs import GibbsSampler
from .state import ChainConfig

logger = logging.getLogger(__name__)


@dataclass
class ChainResult:
    """Traces of one chain: parameters by name and estimands by key."""

    chain: int
    params: dict[str, list[float]] = field(default_factory=dict)
    estimands: dict[str, list[float]] = field(default_factory=dict)

    @property
    def n_draws(self) -> int:
        return len(next(iter(self.params.values()), []))


@dataclass(frozen=True)
class ChainJob:
    """Everything one worker needs to run a chain."""

    data: ObservedData
    priors: Priors
    config: ChainConfig
    chain: int
    requests: tuple[EstimandRequest, ...]
    context: EstimandContext
    progress_interval: int = 0
    debug_invariants: bool = False
    spool_path: Optional[Path] = None


def collect_chain(job: ChainJob) -> ChainResult:
    """Run one chain, evaluating the estimands on each retained draw.

    Unit-level state of a draw is dropped after evaluation, so memory grows with
    the number of retained scalars only. With ``spool_path`` set, every draw is
    also appended to that spool as soon as it is retained.
    """
    sampler = GibbsSampler(
        job.data, job.priors, job.config.family, debug_invariants=job.debug_invariants
    )
    evaluator = EstimandEvaluator(job.requests, job.context)
    result = ChainResult(chain=job.chain)
    spool = None
    if job.spool_path is not None:
        spool = DrawSpool(
            job.spool_path,
            header={
                "chain": job.chain,
                "seed": job.config.seed,
                "family": job.config.family.value,
                "iterations": job.config.iterations,
                "burn_in": job.config.burn_in,
                "thin": job.config.thin,
            },
        )
    try:
        for draw in sampler.run_chain(job.config, job.chain, job.progress_interval):
            draw.estimands = evaluator.evaluate(draw.tables.y, draw.g)
            for name, value in draw.params.named(job.config.family).items():
                result.params.setdefault(name, []).append(value)
            for key, value in draw.estimands.items():
                result.estimands.setdefault(key, []).append(value)
            if spool is not None:
                spool.write(draw.to_record(job.config.family))
    finally:
        if spool is not None:
            spool.close()
    return result


def run_chains(jobs: Sequence[ChainJob], workers: int = 1) -> list[ChainResult]:
    """Run chains in-process or over a process pool; results keep chain order."""
    if workers <= 1 or len(jobs) <= 1:
        return [collect_chain(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(collect_chain, jobs))


def merge_estimands(results: Sequence[ChainResult]) -> dict[str, list[float]]:
    """Concatenate estimand draws over chains in chain order."""
    merged: dict[str, list[float]] = {}
    for result in results:
        for key, values in result.estimands.items():
            merged.setdefault(key, []).extend(values)
    return merged


def summarize_estimands(
    results: Sequence[ChainResult], keys: Sequence[str]
) -> dict[str, EstimandSummary]:
    """Posterior summary per key over all chains."""
    merged = merge_estimands(results)
    return {key: summarize(merged.get(key, []), key) for key in keys}


def chain_diagnostics(results: Sequence[ChainResult]) -> dict[str, TraceSummary]:
    """Diagnostics over parameter traces, chains truncated to a common length."""
    length = min(r.n_draws for r in results)
    names = list(results[0].params)
    traces = {
        name: np.array([r.params[name][:length] for r in results], dtype=float) for name in names
    }
    return diagnostics(traces)
