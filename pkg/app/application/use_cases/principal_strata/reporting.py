"""Shared artifact writing for fit and summarize."""

import logging
from collections.abc import Sequence
from pathlib import Path

from app.domain.entities import EstimandSummary
from app.domain.exceptions import EstimandError
from app.domain.services.estimands import summarize
from app.infrastructure.mcmc.runner import ChainResult, chain_diagnostics, merge_estimands
from app.infrastructure.persistence import FileResultRepository

logger = logging.getLogger(__name__)

ESS_WARNING_THRESHOLD = 100.0


def summarize_results(
    results: Sequence[ChainResult], keys: Sequence[str]
) -> tuple[dict[str, EstimandSummary], list[str]]:
    """Summaries per key and the keys that had too few finite draws."""
    merged = merge_estimands(results)
    summaries: dict[str, EstimandSummary] = {}
    missing: list[str] = []
    for key in keys:
        try:
            summaries[key] = summarize(merged.get(key, []), key)
        except EstimandError as e:
            logger.warning(f"[Report] {e}")
            missing.append(key)
    return summaries, missing


def write_summaries(
    repository: FileResultRepository, summaries: dict[str, EstimandSummary]
) -> tuple[Path, Path]:
    """``estimand_summary.json`` keyed by estimand, and the same rows as CSV."""
    json_path = repository.write_json(
        "estimand_summary.json", {key: s.to_dict() for key, s in summaries.items()}
    )
    csv_path = repository.write_table(
        "estimand_summary.csv", [s.to_dict() for s in summaries.values()]
    )
    return json_path, csv_path


def write_diagnostics(repository: FileResultRepository, results: Sequence[ChainResult]) -> Path:
    """``diagnostics.json``; warns for every trace with ESS under the threshold."""
    traces = chain_diagnostics(results)
    low = [name for name, t in traces.items() if t.ess < ESS_WARNING_THRESHOLD]
    if low:
        logger.warning(
            f"[Report] ESS below {ESS_WARNING_THRESHOLD:.0f} for {len(low)} traces: "
            f"{', '.join(low[:10])}{' ...' if len(low) > 10 else ''}"
        )
    return repository.write_json(
        "diagnostics.json",
        {
            "chains": len(results),
            "draws_per_chain": [r.n_draws for r in results],
            "low_ess": low,
            "traces": {name: t.to_dict() for name, t in traces.items()},
        },
    )
