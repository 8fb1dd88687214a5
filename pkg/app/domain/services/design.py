"""Sampling from the two-stage completely randomized design."""

import logging
import math

import numpy as np

from ..entities.design import AssignmentRealization, DesignConfig
from ..value_objects import Mechanism

logger = logging.getLogger(__name__)


def treated_count(n_j: int, q: float) -> int:
    """Number of treated units in a cluster of size ``n_j`` at proportion ``q``.

    Rounds half up, then clamps to ``[1, n_j - 1]`` so both arms are present.
    """
    k = math.floor(n_j * q + 0.5)
    return int(min(max(k, 1), n_j - 1))


def treated_counts(cluster_sizes: np.ndarray, q: float) -> np.ndarray:
    """Vectorised ``treated_count`` over clusters."""
    sizes = np.asarray(cluster_sizes, dtype=np.int64)
    k = np.floor(sizes * q + 0.5).astype(np.int64)
    return np.clip(k, 1, sizes - 1)


def sample_first_stage(cfg: DesignConfig, rng: np.random.Generator) -> np.ndarray:
    """Mechanism index per cluster: a uniformly random size-J1 subset gets a1."""
    mechanisms = np.zeros(cfg.n_clusters, dtype=np.int64)
    mechanisms[rng.permutation(cfg.n_clusters)[: cfg.j1]] = 1
    return mechanisms


def sample_second_stage(n_j: int, q: float, rng: np.random.Generator) -> np.ndarray:
    """Binary assignment vector with exactly ``treated_count(n_j, q)`` ones."""
    z = np.zeros(n_j, dtype=np.int64)
    z[rng.choice(n_j, size=treated_count(n_j, q), replace=False)] = 1
    return z


def sample_assignment(cfg: DesignConfig, rng: np.random.Generator) -> AssignmentRealization:
    """Draw both stages; units are laid out cluster by cluster."""
    cluster_mechanism = sample_first_stage(cfg, rng)
    sizes = np.asarray(cfg.cluster_sizes, dtype=np.int64)
    cluster = np.repeat(np.arange(cfg.n_clusters), sizes)
    z_parts = []
    for j, n_j in enumerate(cfg.cluster_sizes):
        q = cfg.q(Mechanism.from_index(cluster_mechanism[j]))
        z_parts.append(sample_second_stage(n_j, q, rng))
    logger.debug(
        f"[Design] Sampled assignment: J={cfg.n_clusters}, J1={cfg.j1}, N={cfg.n_units}"
    )
    return AssignmentRealization(
        cluster_mechanism=cluster_mechanism, cluster=cluster, z=np.concatenate(z_parts)
    )
