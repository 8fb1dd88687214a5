"""JSON and CSV result artifacts under one output directory."""

import json
import logging
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from app.domain.repositories import ResultRepository

logger = logging.getLogger(__name__)


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {str(k): _to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_to_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


class FileResultRepository(ResultRepository):
    """Writes artifacts with stable formatting so identical runs give identical bytes."""

    def __init__(self, output_dir: Path) -> None:
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

    def path(self, name: str) -> Path:
        return self.output_dir / name

    def write_json(self, name: str, payload: Mapping[str, Any]) -> Path:
        path = self.path(name)
        text = json.dumps(_to_jsonable(payload), indent=2, sort_keys=True)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"[Output] Wrote {path}")
        return path

    def write_table(self, name: str, rows: Sequence[Mapping[str, Any]]) -> Path:
        path = self.path(name)
        pd.DataFrame(list(rows)).to_csv(path, index=False, lineterminator="\n")
        logger.info(f"[Output] Wrote {path}")
        return path

    def read_json(self, name: str) -> dict[str, Any]:
        return json.loads(self.path(name).read_text(encoding="utf-8"))
