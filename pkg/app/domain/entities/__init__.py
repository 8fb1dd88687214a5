"""Domain entities."""

from .dataset import Dataset, ObservedData, UnitRecord
from .design import AssignmentRealization, DesignConfig
from .estimand_summary import EstimandSummary
from .model_params import GammaCell, LogNormalCell, ModelParams, OutcomeCell, make_cell
from .potential_table import PotentialTables
from .priors import Priors

__all__ = [
    "AssignmentRealization",
    "Dataset",
    "DesignConfig",
    "EstimandSummary",
    "GammaCell",
    "LogNormalCell",
    "ModelParams",
    "ObservedData",
    "OutcomeCell",
    "PotentialTables",
    "Priors",
    "UnitRecord",
    "make_cell",
]
