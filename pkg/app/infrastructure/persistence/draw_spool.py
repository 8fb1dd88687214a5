"""Newline-delimited JSON spool of retained draws."""

import json
import logging
from collections.abc import Iterator
from pathlib import Path
from typing import Any, Optional

from app.domain.exceptions import DataValidationError

logger = logging.getLogger(__name__)


class DrawSpool:
    """Appends one JSON record per draw; each line is flushed as it is written.

    Usable as a context manager. The header record carries run metadata.
    """

    def __init__(self, path: Path, header: Optional[dict[str, Any]] = None) -> None:
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._file = self.path.open("w", encoding="utf-8")
        self.count = 0
        if header is not None:
            self._write({"type": "header", **header})

    def _write(self, record: dict[str, Any]) -> None:
        self._file.write(json.dumps(record, sort_keys=True) + "\n")
        self._file.flush()

    def write(self, record: dict[str, Any]) -> None:
        self._write({"type": "draw", **record})
        self.count += 1

    def close(self) -> None:
        if not self._file.closed:
            self._file.close()
            logger.debug(f"[Spool] Closed {self.path} with {self.count} draws")

    def __enter__(self) -> "DrawSpool":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()


def read_spool(path: Path) -> tuple[dict[str, Any], list[dict[str, Any]]]:
    """Header and draw records of a spool; a truncated last line is ignored.

    Raises:
        DataValidationError: If a line other than the last is not valid JSON.
    """
    header: dict[str, Any] = {}
    draws: list[dict[str, Any]] = []
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    for number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            if number == len(lines):
                logger.warning(f"[Spool] Ignoring truncated final line in {path}")
                break
            raise DataValidationError(f"invalid spool record: {e}", line=number) from e
        if record.get("type") == "header":
            header = record
        else:
            draws.append(record)
    return header, draws


def iter_spools(directory: Path) -> Iterator[Path]:
    """Chain spool files in a fit output directory, in chain order."""
    yield from sorted(
        Path(directory).glob("draws_chain*.ndjson"),
        key=lambda p: int(p.stem.removeprefix("draws_chain")),
    )
