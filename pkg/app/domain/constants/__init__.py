"""Domain constants module."""

from .simulation_parameters import (
    DEFAULT_ESTIMANDS,
    DEFAULT_N_CLUSTERS,
    DEFAULT_PROB_A0,
    DEFAULT_Q0,
    DEFAULT_Q1,
    DEFAULT_SAMPLE_SIZES,
    GAMMA_CELLS,
    GAMMA_PI,
    LOGNORMAL_CELLS,
    LOGNORMAL_PI,
    LOGNORMAL_PUBLISHED_TRUTHS,
    RSBY_CELLS,
    RSBY_N_CLUSTERS,
    RSBY_N_UNITS,
)

__all__ = [
    "DEFAULT_ESTIMANDS",
    "DEFAULT_N_CLUSTERS",
    "DEFAULT_PROB_A0",
    "DEFAULT_Q0",
    "DEFAULT_Q1",
    "DEFAULT_SAMPLE_SIZES",
    "GAMMA_CELLS",
    "GAMMA_PI",
    "LOGNORMAL_CELLS",
    "LOGNORMAL_PI",
    "LOGNORMAL_PUBLISHED_TRUTHS",
    "RSBY_CELLS",
    "RSBY_N_CLUSTERS",
    "RSBY_N_UNITS",
]
