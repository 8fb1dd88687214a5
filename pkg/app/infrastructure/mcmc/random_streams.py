"""Seeded random streams for chains, replications and workers.

Every stream is a child of a master seed addressed by a counter, so work can be
scheduled in any order or process and still reproduce bit for bit.
"""

import numpy as np


def child_seed(master_seed: int, index: int) -> int:
    """64-bit integer seed of the ``index``-th child of ``master_seed``."""
    sequence = np.random.SeedSequence(int(master_seed), spawn_key=(int(index),))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def stream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the child addressed by ``path`` (empty path = the master itself)."""
    sequence = np.random.SeedSequence(int(master_seed), spawn_key=tuple(int(i) for i in path))
    return np.random.default_rng(sequence)


def chain_rng(seed: int, chain: int) -> np.random.Generator:
    """Generator owned by one chain."""
    return stream(seed, chain)
