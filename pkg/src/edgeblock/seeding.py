"""Deterministic derivation of random streams.

Every random decision in the library derives from one master seed plus a
fixed tuple of integer coordinates (stream tag, replicate index, ...), so
results never depend on execution order or worker scheduling.
"""

import numpy as np

DEFAULT_SEED = 42

# stream tags: first coordinate after the master seed
TAG_SEED_SETS = 1
TAG_CASCADE = 2
TAG_CASCADE_INDEP = 3
TAG_STRATEGY = 4
TAG_SWEEP = 5
TAG_GENERATE = 6

_MASK64 = 0xFFFFFFFFFFFFFFFF


def seed_sequence(master_seed, *coords):
    """SeedSequence keyed by (master_seed, *coords)."""
    entropy = [int(master_seed) & _MASK64] + [int(c) for c in coords]
    return np.random.SeedSequence(entropy=entropy)


def rng_for(master_seed, *coords):
    """A numpy Generator on the stream keyed by (master_seed, *coords)."""
    return np.random.default_rng(seed_sequence(master_seed, *coords))


def replicate_seed_bits(master_seed, *coords, count):
    """int64 array of per-replicate kernel seeds (uint64 bit patterns).

    Element ``i`` is a pure function of (master_seed, *coords, i), so
    replicates can run in any order or in parallel.
    """
    u = seed_sequence(master_seed, *coords).generate_state(count, np.uint64)
    return u.view(np.int64)
