"""Use case for generating one synthetic dataset."""

import logging
from typing import Any, Optional

from app.application.dto import DgpSection
from app.application.services import RunContext
from app.infrastructure.mcmc.random_streams import stream
from app.infrastructure.persistence import CsvDatasetRepository
from app.infrastructure.simulation import generate_dataset

from .truth_use_case import compute_truths

logger = logging.getLogger(__name__)


class SimulateDatasetUseCase:
    """Use case for writing ``dataset.csv`` and ``truth.json`` from the configured DGP.

    ``shape="rsby"`` replaces the DGP preset with the field-study shape.
    """

    def __init__(self, context: RunContext, shape: Optional[str] = None) -> None:
        self.context = context
        self.shape = shape

    def execute(self) -> dict[str, Any]:
        """Generate the dataset and its truths.

        The data use the same child stream as replication 0 of a benchmark with
        the same seed.

        Returns:
            Dictionary containing:
                - dataset: Path of the written CSV
                - truth: Path of the written truth table
                - n_units / n_clusters: Size of the dataset
        """
        section = self.context.config.dgp or DgpSection()
        if self.shape == "rsby":
            section = section.model_copy(update={"preset": "rsby"})
        cfg = section.to_dgp_config(self.context.config.design)
        simulated = generate_dataset(cfg, stream(self.context.seed, 0, 0))

        repository = self.context.repository()
        dataset_path = repository.path("dataset.csv")
        CsvDatasetRepository().save(simulated.dataset, dataset_path)
        truths = compute_truths(cfg, section, self.context.seed)
        truth_path = repository.write_json(
            "truth.json", {key: truth.to_dict() for key, truth in truths.items()}
        )
        self.context.write_resolved_config(repository)
        logger.info(
            f"[Simulate] {cfg.n_units} units in {cfg.n_clusters} clusters, "
            f"family={cfg.family.value}"
        )
        return {
            "dataset": str(dataset_path),
            "truth": str(truth_path),
            "n_units": cfg.n_units,
            "n_clusters": cfg.n_clusters,
        }
