"""Use case for fitting the principal-stratification model to a CSV dataset."""

import logging
from pathlib import Path
from typing import Any

from app.application.services import RunContext
from app.domain.services.estimands import EstimandContext
from app.infrastructure.mcmc import ChainJob, run_chains
from app.infrastructure.persistence import CsvDatasetRepository

from .reporting import summarize_results, write_diagnostics, write_summaries

logger = logging.getLogger(__name__)


class FitModelUseCase:
    """Use case for running the Gibbs chains on observed data."""

    def __init__(self, context: RunContext, data_path: Path) -> None:
        self.context = context
        self.data_path = Path(data_path)

    def execute(self) -> dict[str, Any]:
        """Fit the model and write draws, diagnostics and estimand summaries.

        Steps:
        1. Loads and validates the dataset
        2. Runs ``chain.chains`` chains, each spooling its draws as they are retained
        3. Summarizes the requested estimands over all chains

        Treated fractions for the overall and complier-overall effects follow the
        observed treated count of each cluster's own mechanism; the other mechanism
        uses the design proportion when a design section is given.

        Returns:
            Dictionary with artifact paths, draw counts and estimands that could not
            be summarized.

        Raises:
            DataValidationError: If the dataset is malformed.
            SamplerFault: If a chain fails.
        """
        config = self.context.config
        dataset = CsvDatasetRepository().load(self.data_path)
        observed = dataset.to_arrays()
        design = config.design
        estimand_context = EstimandContext.from_observed(
            observed,
            q0=design.q0 if design else None,
            q1=design.q1 if design else None,
        )
        chain_config = config.chain.to_chain_config(self.context.seed)
        repository = self.context.repository()
        self.context.write_resolved_config(repository)

        requests = tuple(config.estimands.parsed())
        jobs = [
            ChainJob(
                data=observed,
                priors=config.priors.to_priors(),
                config=chain_config,
                chain=k,
                requests=requests,
                context=estimand_context,
                progress_interval=self.context.settings.progress_interval,
                debug_invariants=self.context.settings.debug_invariants,
                spool_path=repository.path(f"draws_chain{k}.ndjson") if config.output.spool else None,
            )
            for k in range(chain_config.chains)
        ]
        logger.info(
            f"[Fit] Start: {observed.n_units} units, {observed.n_clusters} clusters, "
            f"{chain_config.chains} chains x {chain_config.iterations} iterations, "
            f"family={chain_config.family.value}"
        )
        results = run_chains(jobs, workers=self.context.workers)

        diagnostics_path = write_diagnostics(repository, results)
        summaries, missing = summarize_results(results, [r.key for r in requests])
        json_path, csv_path = write_summaries(repository, summaries)
        logger.info(f"[Fit] Finished: {sum(r.n_draws for r in results)} retained draws")
        return {
            "diagnostics": str(diagnostics_path),
            "summary": str(json_path),
            "summary_csv": str(csv_path),
            "draws": [r.n_draws for r in results],
            "unsummarized": missing,
        }
