"""Published simulation settings and the default estimand list.

Cell tables map ``stratum/z/mechanism`` labels to ``(p, loc, scale)``:
``(p, mu, sigma2)`` for the log-normal family and ``(p, alpha, theta)`` for Gamma.
Only canonical cells appear; collapsed cells share their z=0 entry.
"""

from typing import Final

# Stratum order: cc, aa, nn, ca, nc, na.
LOGNORMAL_PI: Final[dict[str, float]] = {
    "cc": 0.4,
    "aa": 0.2,
    "nn": 0.2,
    "ca": 0.1,
    "nc": 0.05,
    "na": 0.05,
}

LOGNORMAL_CELLS: Final[dict[str, tuple[float, float, float]]] = {
    "cc/z0/a0": (0.1, 5.0, 1.5),
    "cc/z1/a0": (0.2, 7.5, 2.5),
    "cc/z0/a1": (0.1, 5.0, 1.5),
    "cc/z1/a1": (0.2, 7.5, 2.5),
    "aa/z0/a0": (0.05, 10.0, 2.0),
    "aa/z0/a1": (0.05, 10.0, 2.5),
    "nn/z0/a0": (0.03, 3.0, 2.0),
    "nn/z0/a1": (0.03, 3.0, 2.5),
    "ca/z0/a0": (0.1, 5.0, 1.5),
    "ca/z1/a0": (0.2, 8.0, 1.5),
    "ca/z0/a1": (0.1, 10.0, 2.5),
    "nc/z0/a0": (0.02, 2.0, 2.0),
    "nc/z0/a1": (0.08, 4.0, 2.5),
    "nc/z1/a1": (0.18, 8.0, 2.5),
    "na/z0/a0": (0.04, 2.0, 1.5),
    "na/z0/a1": (0.06, 10.0, 1.5),
}

GAMMA_PI: Final[dict[str, float]] = {
    "cc": 0.3,
    "aa": 0.2,
    "nn": 0.17,
    "ca": 0.13,
    "nc": 0.1,
    "na": 0.1,
}

GAMMA_CELLS: Final[dict[str, tuple[float, float, float]]] = {
    "cc/z0/a0": (0.1, 10.0, 100.0),
    "cc/z1/a0": (0.2, 12.0, 125.0),
    "cc/z0/a1": (0.1, 10.0, 100.0),
    "cc/z1/a1": (0.2, 12.0, 125.0),
    "aa/z0/a0": (0.05, 13.0, 100.0),
    "aa/z0/a1": (0.05, 13.0, 100.0),
    "nn/z0/a0": (0.05, 8.0, 90.0),
    "nn/z0/a1": (0.05, 8.0, 90.0),
    "ca/z0/a0": (0.1, 10.0, 100.0),
    "ca/z1/a0": (0.2, 11.0, 100.0),
    "ca/z0/a1": (0.1, 12.0, 83.0),
    "nc/z0/a0": (0.03, 9.0, 90.0),
    "nc/z0/a1": (0.1, 10.0, 100.0),
    "nc/z1/a1": (0.15, 13.0, 125.0),
    "na/z0/a0": (0.04, 8.5, 100.0),
    "na/z0/a1": (0.06, 13.0, 125.0),
}

# Expenditure-like shape: about 30% zeros, heavy right tail with a few dozen
# values above 1e5 in a sample of 10,072.
RSBY_CELLS: Final[dict[str, tuple[float, float, float]]] = {
    "cc/z0/a0": (0.30, 6.8, 3.0),
    "cc/z1/a0": (0.28, 7.1, 3.0),
    "cc/z0/a1": (0.30, 6.9, 3.0),
    "cc/z1/a1": (0.28, 7.2, 3.0),
    "aa/z0/a0": (0.25, 7.4, 3.0),
    "aa/z0/a1": (0.25, 7.6, 3.0),
    "nn/z0/a0": (0.35, 6.8, 3.0),
    "nn/z0/a1": (0.35, 6.9, 3.0),
    "ca/z0/a0": (0.30, 6.8, 3.0),
    "ca/z1/a0": (0.28, 7.1, 3.0),
    "ca/z0/a1": (0.28, 7.2, 3.0),
    "nc/z0/a0": (0.32, 6.8, 3.0),
    "nc/z0/a1": (0.32, 6.9, 3.0),
    "nc/z1/a1": (0.28, 7.2, 3.0),
    "na/z0/a0": (0.32, 6.8, 3.0),
    "na/z0/a1": (0.25, 7.4, 3.0),
}

RSBY_N_UNITS: Final[int] = 10_072
RSBY_N_CLUSTERS: Final[int] = 435

DEFAULT_Q0: Final[float] = 0.4
DEFAULT_Q1: Final[float] = 0.8
DEFAULT_PROB_A0: Final[float] = 0.5
DEFAULT_SAMPLE_SIZES: Final[tuple[int, ...]] = (5000, 10000, 50000)
DEFAULT_N_CLUSTERS: Final[int] = 100

# Published result rows, in reporting order.
DEFAULT_ESTIMANDS: Final[tuple[str, ...]] = (
    "CADE(a1;a1)",
    "CADE(a0;a0)",
    "DEY(a1)",
    "DEY(a0)",
    "DED(a1)",
    "DED(a0)",
    "SEY(1)",
    "SEY(0)",
    "SED(1)",
    "SED(0)",
    "OEY(a0,a1)",
    "CAOE(a0,a1;a0)",
    "CAOE(a0,a1;a1)",
    "CADE(a1;a0)",
    "CADE(a0;a1)",
    "CASE(0;a0)",
    "CASE(1;a0)",
    "CASE(0;a1)",
    "CASE(1;a1)",
)

# Published super-population values for the log-normal setting.
LOGNORMAL_PUBLISHED_TRUTHS: Final[dict[str, float]] = {
    "CADE(a0;a0)": 4765.78,
    "CADE(a1;a1)": 5156.41,
    "DEY(a0)": 2382.89,
    "DEY(a1)": 2324.13,
    "DED(a0)": 0.5,
    "DED(a1)": 0.45,
}
