"""Use case for the super-population truth table of a configured DGP."""

import logging
from typing import Any, Optional

from app.application.dto import DgpSection
from app.application.services import RunContext
from app.domain.value_objects import OutcomeFamily
from app.infrastructure.mcmc.random_streams import stream
from app.infrastructure.simulation import (
    DgpConfig,
    Truth,
    superpop_truth_analytic,
    superpop_truth_bruteforce,
)

logger = logging.getLogger(__name__)

# Child stream of the master seed reserved for the brute-force oracle.
TRUTH_STREAM = 2**31 - 1


def compute_truths(
    cfg: DgpConfig,
    section: DgpSection,
    seed: int,
    mode: Optional[str] = None,
) -> dict[str, Truth]:
    """Truths in the requested mode.

    ``published`` uses the factorized formula for log-normal processes and falls
    back to brute force for Gamma ones, which have no analytic path.
    """
    mode = mode or section.truth
    if mode == "published" and cfg.family is OutcomeFamily.LOGNORMAL:
        return superpop_truth_analytic(cfg)
    if mode == "exact" and cfg.family is OutcomeFamily.LOGNORMAL:
        return superpop_truth_analytic(cfg, exact=True)
    logger.info(f"[Truth] Brute force for {cfg.family.value} at N={cfg.n_units}")
    return superpop_truth_bruteforce(cfg, stream(seed, TRUTH_STREAM), section.bruteforce_draws)


class TruthUseCase:
    """Use case for writing ``truth.json`` for the configured DGP."""

    def __init__(self, context: RunContext, mode: Optional[str] = None) -> None:
        self.context = context
        self.mode = mode

    def execute(self) -> dict[str, Any]:
        """Compute and write the truth table.

        Returns:
            Dictionary with the artifact path and the number of truths.

        Raises:
            ConfigError: If the DGP section is invalid.
        """
        section = self.context.config.dgp or DgpSection()
        cfg = section.to_dgp_config(self.context.config.design)
        truths = compute_truths(cfg, section, self.context.seed, self.mode)
        repository = self.context.repository()
        path = repository.write_json(
            "truth.json", {key: truth.to_dict() for key, truth in truths.items()}
        )
        self.context.write_resolved_config(repository)
        return {"truth": str(path), "n_truths": len(truths)}
