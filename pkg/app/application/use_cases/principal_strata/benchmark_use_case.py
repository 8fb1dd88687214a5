"""Use case for the frequentist-property study."""

import logging
from typing import Any

from app.application.dto import DgpSection
from app.application.services import RunContext
from app.infrastructure.simulation import StudyConfig, run_sample_size_study

from .truth_use_case import compute_truths

logger = logging.getLogger(__name__)


class BenchmarkUseCase:
    """Use case for coverage, bias and MSE over repeated synthetic experiments."""

    def __init__(self, context: RunContext) -> None:
        self.context = context

    def execute(self) -> dict[str, Any]:
        """Run ``dgp.n_sim`` replications at every size in ``dgp.sample_sizes``.

        Returns:
            Dictionary with the path of ``sim_metrics.csv`` and the row count.

        Raises:
            ConfigError: If a requested estimand has no truth.
            SamplerFault: Carrying the index of a failed replication.
        """
        config = self.context.config
        section = config.dgp or DgpSection()
        cfg = section.to_dgp_config(config.design)
        study = StudyConfig(
            n_sim=section.n_sim,
            chain=config.chain.to_chain_config(self.context.seed),
            priors=config.priors.to_priors(),
            fit_family=section.fit_family or config.chain.family,
            workers=self.context.workers,
        )
        repository = self.context.repository()
        self.context.write_resolved_config(repository)
        rows = run_sample_size_study(
            cfg,
            section.sample_sizes,
            study,
            config.estimands.parsed(),
            lambda sized: compute_truths(sized, section, self.context.seed),
        )
        path = repository.write_table("sim_metrics.csv", [m.to_row() for m in rows])
        return {"sim_metrics": str(path), "rows": len(rows)}
