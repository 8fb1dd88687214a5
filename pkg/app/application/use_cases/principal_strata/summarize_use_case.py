"""Use case for summarizing the draw spools of a finished or interrupted fit."""

import logging
from pathlib import Path
from typing import Any, Optional

from app.application.services import RunContext
from app.domain.exceptions import DataValidationError
from app.infrastructure.mcmc.runner import ChainResult
from app.infrastructure.persistence import iter_spools, read_spool

from .reporting import summarize_results, write_diagnostics, write_summaries

logger = logging.getLogger(__name__)


def load_chain_results(directory: Path) -> list[ChainResult]:
    """Rebuild chain traces from ``draws_chain*.ndjson``; null estimands become NaN.

    Raises:
        DataValidationError: If the directory holds no spool.
    """
    results = []
    for path in iter_spools(directory):
        header, draws = read_spool(path)
        result = ChainResult(chain=int(header.get("chain", len(results))))
        for draw in draws:
            for name, value in draw["params"].items():
                result.params.setdefault(name, []).append(float(value))
            for key, value in draw["estimands"].items():
                result.estimands.setdefault(key, []).append(
                    float("nan") if value is None else float(value)
                )
        results.append(result)
    if not results:
        raise DataValidationError(f"no draw spools in {directory}")
    return results


class SummarizeUseCase:
    """Use case for estimand summaries from spooled draws.

    Works on partial spools left by an interrupted fit.
    """

    def __init__(self, context: RunContext, input_dir: Optional[Path] = None) -> None:
        self.context = context
        self.input_dir = Path(input_dir) if input_dir is not None else context.output_dir

    def execute(self) -> dict[str, Any]:
        """Summarize the configured estimands found in the spools.

        Returns:
            Dictionary with artifact paths and per-chain draw counts.
        """
        results = load_chain_results(self.input_dir)
        keys = [k for k in self.context.config.estimands.requests if k in results[0].estimands]
        skipped = sorted(set(self.context.config.estimands.requests) - set(keys))
        if skipped:
            logger.warning(f"[Summarize] Not present in spools: {', '.join(skipped)}")
        repository = self.context.repository()
        summaries, missing = summarize_results(results, keys)
        json_path, csv_path = write_summaries(repository, summaries)
        diagnostics_path = write_diagnostics(repository, results)
        self.context.write_resolved_config(repository)
        return {
            "summary": str(json_path),
            "summary_csv": str(csv_path),
            "diagnostics": str(diagnostics_path),
            "draws": [r.n_draws for r in results],
            "unsummarized": missing + skipped,
        }
