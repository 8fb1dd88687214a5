"""CSV storage of observed datasets.

The header is exactly ``cluster,unit,mechanism,z,d,y``. Line numbers in errors
count the header as line 1.
"""

import logging
from pathlib import Path

import pandas as pd

from app.domain.entities import Dataset, UnitRecord
from app.domain.exceptions import DataValidationError
from app.domain.repositories import DatasetRepository
from app.domain.value_objects import Mechanism

logger = logging.getLogger(__name__)

COLUMNS = ["cluster", "unit", "mechanism", "z", "d", "y"]


def _parse_binary(value: str, name: str, line: int) -> int:
    if value not in ("0", "1"):
        raise DataValidationError(f"{name} must be 0 or 1, got {value!r}", line=line)
    return int(value)


def _parse_outcome(value: str, line: int) -> float:
    try:
        y = float(value)
    except ValueError as e:
        raise DataValidationError(f"y is not a number: {value!r}", line=line) from e
    if y < 0:
        raise DataValidationError(f"y must be nonnegative, got {value}", line=line)
    return y


class CsvDatasetRepository(DatasetRepository):
    """Reads and writes datasets as CSV with pandas."""

    def load(self, path: Path) -> Dataset:
        """Read and validate a dataset file.

        Raises:
            DataValidationError: On a missing file, a wrong header or any malformed row.
        """
        path = Path(path)
        if not path.exists():
            raise DataValidationError(f"dataset file not found: {path}")
        try:
            frame = pd.read_csv(path, dtype=str, keep_default_na=False)
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise DataValidationError(f"cannot parse {path}: {e}") from e
        if list(frame.columns) != COLUMNS:
            raise DataValidationError(
                f"header must be {','.join(COLUMNS)}, got {','.join(map(str, frame.columns))}",
                line=1,
            )
        records = []
        for index, row in enumerate(frame.itertuples(index=False)):
            line = index + 2
            cluster, unit, mechanism, z, d, y = (str(v).strip() for v in row)
            if not cluster or not unit:
                raise DataValidationError("cluster and unit ids must be non-empty", line=line)
            try:
                label = Mechanism(mechanism)
            except ValueError as e:
                raise DataValidationError(
                    f"unknown mechanism label {mechanism!r}", line=line, cluster=cluster
                ) from e
            records.append(
                UnitRecord(
                    cluster=cluster,
                    unit=unit,
                    mechanism=label,
                    z=_parse_binary(z, "z", line),
                    d=_parse_binary(d, "d", line),
                    y=_parse_outcome(y, line),
                    line=line,
                )
            )
        dataset = Dataset(records=records)
        logger.info(
            f"[Data] Loaded {len(dataset)} units in {dataset.n_clusters} clusters from {path}"
        )
        return dataset

    def save(self, dataset: Dataset, path: Path) -> None:
        """Write a dataset; floats use their shortest round-trip representation."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame = pd.DataFrame(
            {
                "cluster": [r.cluster for r in dataset.records],
                "unit": [r.unit for r in dataset.records],
                "mechanism": [r.mechanism.value for r in dataset.records],
                "z": [r.z for r in dataset.records],
                "d": [r.d for r in dataset.records],
                "y": [repr(float(r.y)) for r in dataset.records],
            },
            columns=COLUMNS,
        )
        frame.to_csv(path, index=False, lineterminator="\n")
        logger.info(f"[Data] Wrote {len(dataset)} units to {path}")


def load_csv(path: Path) -> Dataset:
    """Load a validated dataset from ``path``."""
    return CsvDatasetRepository().load(path)
