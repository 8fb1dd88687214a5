"""Effective run settings: config file, CLI overrides and process settings merged."""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from app.application.dto import RunConfig
from app.config import Settings, get_settings
from app.infrastructure.persistence import FileResultRepository

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunOverrides:
    """Command-line values that take precedence over the run config."""

    seed: Optional[int] = None
    chains: Optional[int] = None
    output_dir: Optional[Path] = None
    workers: Optional[int] = None


@dataclass(frozen=True)
class RunContext:
    """A validated run config with overrides applied.

    Precedence for the seed is CLI flag, then ``chain.seed`` in the config,
    then ``Settings.default_seed``. The output directory follows the same order
    with ``output.dir`` and ``Settings.output_dir``.
    """

    config: RunConfig
    seed: int
    output_dir: Path
    workers: int
    settings: Settings

    @classmethod
    def build(
        cls,
        config: RunConfig,
        overrides: Optional[RunOverrides] = None,
        settings: Optional[Settings] = None,
    ) -> "RunContext":
        overrides = overrides or RunOverrides()
        settings = settings or get_settings()
        if overrides.chains is not None:
            chain = config.chain.model_copy(update={"chains": overrides.chains})
            config = config.model_copy(update={"chain": chain})
        seed = overrides.seed
        if seed is None:
            seed = config.chain.seed if config.chain.seed is not None else settings.default_seed
        output_dir = overrides.output_dir or config.output.dir or settings.output_dir
        workers = overrides.workers or settings.workers
        logger.debug(f"[Run] seed={seed}, output_dir={output_dir}, workers={workers}")
        return cls(
            config=config,
            seed=int(seed),
            output_dir=Path(output_dir),
            workers=int(workers),
            settings=settings,
        )

    def repository(self) -> FileResultRepository:
        return FileResultRepository(self.output_dir)

    def write_resolved_config(self, repository: FileResultRepository) -> Path:
        document = self.config.resolved(self.seed)
        document["output"]["dir"] = str(self.output_dir)
        return repository.write_json("resolved_config.json", document)
