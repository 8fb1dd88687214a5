"""Frequentist properties of the posterior over repeated synthetic experiments."""

import logging
from collections.abc import Callable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from app.domain.entities import EstimandSummary, Priors
from app.domain.exceptions import ConfigError, SamplerFault
from app.domain.services.estimands import EstimandContext
from app.domain.value_objects import EstimandRequest, OutcomeFamily
from app.infrastructure.mcmc.random_streams import child_seed, stream
from app.infrastructure.mcmc.runner import ChainJob, run_chains, summarize_estimands
from app.infrastructure.mcmc.state import ChainConfig

from .dgp import DgpConfig, SimulatedData, generate_dataset
from .truths import Truth

logger = logging.getLogger(__name__)

# fitter(simulated, chain_config, requests, replication) -> summaries by key
Fitter = Callable[
    [SimulatedData, ChainConfig, Sequence[EstimandRequest], int], Mapping[str, EstimandSummary]
]


@dataclass(frozen=True)
class SimMetrics:
    """Coverage, bias and MSE of one estimand over replications."""

    estimand: str
    n_units: int
    coverage: float
    bias: float
    mse: float
    n_sim: int
    mean_interval_width: float

    def to_row(self) -> dict[str, object]:
        """CSV row: ``estimand,N,coverage,bias,mse,n_sim,mean_interval_width``."""
        row = asdict(self)
        return {"estimand": row.pop("estimand"), "N": row.pop("n_units"), **row}


@dataclass(frozen=True)
class StudyConfig:
    """Replication count, fitting model and parallelism of a study.

    Attributes:
        n_sim: Number of replications.
        chain: Chain settings; ``chain.seed`` is the master seed of the study.
        priors: Priors of the fitted model.
        fit_family: Outcome family of the fitted model; ``None`` fits the generating family.
        workers: Process pool size for replications.
    """

    n_sim: int
    chain: ChainConfig
    priors: Priors = Priors()
    fit_family: Optional[OutcomeFamily] = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.n_sim < 2:
            raise ConfigError(f"a study needs at least 2 replications, got {self.n_sim}")


def fit_replication(
    simulated: SimulatedData,
    chain: ChainConfig,
    requests: Sequence[EstimandRequest],
    replication: int,
    priors: Optional[Priors] = None,
) -> dict[str, EstimandSummary]:
    """Fit one synthetic dataset and summarize the requested estimands.

    Treated fractions come from the design, as they are known in a simulation.
    """
    context = EstimandContext.from_design(simulated.observed.cluster, simulated.design)
    jobs = [
        ChainJob(
            data=simulated.observed,
            priors=priors or Priors(),
            config=chain,
            chain=k,
            requests=tuple(requests),
            context=context,
        )
        for k in range(chain.chains)
    ]
    results = run_chains(jobs, workers=1)
    return summarize_estimands(results, [r.key for r in requests])


def _replication(
    dgp: DgpConfig,
    study: StudyConfig,
    requests: Sequence[EstimandRequest],
    replication: int,
    fitter: Optional[Fitter],
) -> dict[str, EstimandSummary]:
    master = study.chain.seed
    simulated = generate_dataset(dgp, stream(master, replication, 0))
    chain = ChainConfig(
        iterations=study.chain.iterations,
        burn_in=study.chain.burn_in,
        thin=study.chain.thin,
        seed=child_seed(master, replication),
        chains=study.chain.chains,
        family=study.fit_family or dgp.family,
    )
    try:
        if fitter is not None:
            return dict(fitter(simulated, chain, requests, replication))
        return fit_replication(simulated, chain, requests, replication, study.priors)
    except SamplerFault as e:
        raise SamplerFault(str(e), unit=e.unit, replication=replication) from e


def _replication_job(args: tuple) -> dict[str, EstimandSummary]:
    return _replication(*args)


def score(
    summaries: Sequence[Mapping[str, EstimandSummary]],
    truths: Mapping[str, Truth],
    keys: Sequence[str],
    n_units: int,
) -> dict[str, SimMetrics]:
    """Coverage of the 95% interval, bias and MSE of the posterior median."""
    metrics = {}
    for key in keys:
        truth = truths[key].value
        medians = np.array([s[key].median for s in summaries])
        covered = np.array([s[key].covers(truth) for s in summaries])
        widths = np.array([s[key].interval_width for s in summaries])
        errors = medians - truth
        metrics[key] = SimMetrics(
            estimand=key,
            n_units=n_units,
            coverage=float(covered.mean()),
            bias=float(errors.mean()),
            mse=float(np.mean(errors**2)),
            n_sim=len(summaries),
            mean_interval_width=float(widths.mean()),
        )
    return metrics


def run_study(
    dgp: DgpConfig,
    study: StudyConfig,
    requests: Sequence[EstimandRequest],
    truths: Mapping[str, Truth],
    fitter: Optional[Fitter] = None,
) -> dict[str, SimMetrics]:
    """Generate, fit and summarize ``n_sim`` replications, then score them against truths.

    Replication ``k`` draws its data from child stream ``(k, 0)`` of the master seed
    and fits with child seed ``k``, so results do not depend on scheduling.

    Raises:
        SamplerFault: Carrying the replication index of a failed fit.
    """
    keys = [r.key for r in requests]
    missing = [key for key in keys if key not in truths]
    if missing:
        raise ConfigError(f"no truth available for {missing}")
    args = [(dgp, study, tuple(requests), k, fitter) for k in range(study.n_sim)]
    logger.info(
        f"[Study] Start: N={dgp.n_units}, J={dgp.n_clusters}, n_sim={study.n_sim}, "
        f"generate={dgp.family.value}, fit={(study.fit_family or dgp.family).value}"
    )
    summaries: list[dict[str, EstimandSummary]] = []
    if study.workers <= 1 or fitter is not None:
        for arg in args:
            summaries.append(_replication_job(arg))
            logger.info(f"[Study] Replication {len(summaries)}/{study.n_sim} finished")
    else:
        with ProcessPoolExecutor(max_workers=study.workers) as pool:
            for summary in pool.map(_replication_job, args):
                summaries.append(summary)
                logger.info(f"[Study] Replication {len(summaries)}/{study.n_sim} finished")
    return score(summaries, truths, keys, dgp.n_units)


def run_sample_size_study(
    dgp: DgpConfig,
    sample_sizes: Sequence[int],
    study: StudyConfig,
    requests: Sequence[EstimandRequest],
    truth_for: Callable[[DgpConfig], Mapping[str, Truth]],
    fitter: Optional[Fitter] = None,
) -> list[SimMetrics]:
    """``run_study`` at each sample size; rows ordered by estimand, then N.

    ``truth_for`` is called per size, since treated fractions follow the cluster sizes.
    """
    by_size = {}
    for n in sample_sizes:
        sized = dgp.with_size(n)
        by_size[n] = run_study(sized, study, requests, truth_for(sized), fitter)
    return [by_size[n][r.key] for r in requests for n in sample_sizes]
