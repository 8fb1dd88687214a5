import numpy as np
import pytest

from app.domain.entities import DesignConfig
from app.domain.exceptions import ConfigError
from app.domain.services.design import (
    sample_assignment,
    sample_first_stage,
    sample_second_stage,
    treated_count,
    treated_counts,
)
from app.domain.value_objects import Mechanism


@pytest.mark.parametrize(
    "n_j, q, expected",
    [
        (50, 0.4, 20),
        (50, 0.8, 40),
        (5, 0.5, 3),  # 2.5 rounds half up
        (3, 0.1, 1),  # clamped up
        (3, 0.95, 2),  # clamped down
        (2, 0.5, 1),
    ],
)
def test_treated_count(n_j, q, expected):
    assert treated_count(n_j, q) == expected


def test_treated_counts_matches_scalar_rule():
    sizes = np.array([2, 3, 5, 23, 24, 50])
    for q in (0.1, 0.4, 0.5, 0.8):
        assert treated_counts(sizes, q).tolist() == [treated_count(int(n), q) for n in sizes]


def test_second_stage_has_exact_treated_count(rng):
    for n_j in (2, 7, 50):
        z = sample_second_stage(n_j, 0.8, rng)
        assert z.shape == (n_j,)
        assert set(np.unique(z)) <= {0, 1}
        assert z.sum() == treated_count(n_j, 0.8)


def test_first_stage_assigns_exactly_j1_clusters(rng):
    cfg = DesignConfig.equal_clusters(1000, 20, j1=7, q0=0.4, q1=0.8)
    for _ in range(20):
        assert sample_first_stage(cfg, rng).sum() == 7


def test_first_stage_is_uniform_over_subsets(rng):
    cfg = DesignConfig.equal_clusters(8, 4, j1=2, q0=0.4, q1=0.8)
    counts = np.zeros(4)
    for _ in range(6000):
        counts += sample_first_stage(cfg, rng)
    # Each cluster is in the a1 set with probability 1/2.
    assert np.allclose(counts / 6000, 0.5, atol=0.03)


def test_assignment_realization_is_consistent(rng):
    cfg = DesignConfig.equal_clusters(103, 10, j1=5, q0=0.4, q1=0.8)
    realization = sample_assignment(cfg, rng)
    assert realization.z.shape == (103,)
    sizes = np.bincount(realization.cluster)
    assert sizes.tolist() == list(cfg.cluster_sizes)
    treated = np.bincount(realization.cluster, weights=realization.z).astype(int)
    for j, n_j in enumerate(cfg.cluster_sizes):
        mechanism = Mechanism.from_index(realization.cluster_mechanism[j])
        assert treated[j] == treated_count(n_j, cfg.q(mechanism))
    assert np.all(realization.a == realization.cluster_mechanism[realization.cluster])


def test_equal_clusters_spreads_the_remainder():
    cfg = DesignConfig.equal_clusters(103, 10, j1=5, q0=0.4, q1=0.8)
    assert cfg.cluster_sizes == (11, 11, 11, 10, 10, 10, 10, 10, 10, 10)
    assert cfg.n_units == 103


@pytest.mark.parametrize(
    "kwargs",
    [
        {"cluster_sizes": (10,), "j1": 0, "q0": 0.4, "q1": 0.8},
        {"cluster_sizes": (10, 10), "j1": 2, "q0": 0.4, "q1": 0.8},
        {"cluster_sizes": (10, 1), "j1": 1, "q0": 0.4, "q1": 0.8},
        {"cluster_sizes": (10, 10), "j1": 1, "q0": 0.8, "q1": 0.4},
        {"cluster_sizes": (10, 10), "j1": 1, "q0": 0.0, "q1": 0.8},
    ],
)
def test_invalid_designs_are_rejected(kwargs):
    with pytest.raises(ConfigError):
        DesignConfig(**kwargs)
