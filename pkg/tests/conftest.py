"""Shared fixtures."""

import numpy as np
import pytest

from app.config import get_settings
from app.domain.entities import Dataset, UnitRecord
from app.domain.value_objects import Mechanism
from app.infrastructure.mcmc.random_streams import stream
from app.infrastructure.simulation import DgpConfig, generate_dataset


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def lognormal_dgp() -> DgpConfig:
    """Published log-normal process at a size that fits quickly."""
    return DgpConfig.lognormal(n_units=400, n_clusters=10)


@pytest.fixture
def simulated(lognormal_dgp):
    return generate_dataset(lognormal_dgp, stream(7, 0, 0))


@pytest.fixture
def tiny_dataset() -> Dataset:
    """Two clusters, one per mechanism, covering every (z, d) combination."""
    rows = [
        ("c0", "u0", Mechanism.A0, 0, 0, 0.0),
        ("c0", "u1", Mechanism.A0, 0, 1, 120.5),
        ("c0", "u2", Mechanism.A0, 1, 1, 300.0),
        ("c0", "u3", Mechanism.A0, 1, 0, 15.0),
        ("c1", "u4", Mechanism.A1, 0, 0, 40.0),
        ("c1", "u5", Mechanism.A1, 0, 1, 0.0),
        ("c1", "u6", Mechanism.A1, 1, 1, 980.0),
        ("c1", "u7", Mechanism.A1, 1, 0, 7.25),
    ]
    return Dataset(
        records=[
            UnitRecord(cluster=c, unit=u, mechanism=m, z=z, d=d, y=y)
            for c, u, m, z, d, y in rows
        ]
    )


@pytest.fixture(autouse=True)
def clear_settings_cache():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
