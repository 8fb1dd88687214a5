"""File-based persistence: datasets, result artifacts and draw spools."""

from .csv_dataset_repository import CsvDatasetRepository, load_csv
from .draw_spool import DrawSpool, iter_spools, read_spool
from .result_writer import FileResultRepository

__all__ = [
    "CsvDatasetRepository",
    "DrawSpool",
    "FileResultRepository",
    "iter_spools",
    "load_csv",
    "read_spool",
]
