"""Seeded random streams.

Every random draw in the package comes from a ``numpy.random.Generator``
backed by ``PCG64``. A parent seed is split into independent child streams
by ``SeedSequence(entropy=seed, spawn_key=key)``; the key is a tuple of
small integers (a trial index, a named stream id, a repeat number). The
rule is fixed by ``STREAM_VERSION`` so results can be reproduced across
platforms and releases.
"""

from __future__ import annotations

import numpy as np

from ..core.errors import InvalidArgumentError

STREAM_VERSION = 1

# Named child streams of an instance seed.
GRAPH_STREAM = 1
PROFILE_STREAM = 2
ALGORITHM_STREAM = 3
SIZE_STREAM = 4


def _sequence(seed: int, key) -> np.random.SeedSequence:
    if seed is None or int(seed) < 0:
        raise InvalidArgumentError(f"seed must be a non-negative integer, got {seed!r}")
    key = tuple(int(k) for k in key)
    if any(k < 0 for k in key):
        raise InvalidArgumentError(f"stream key must be non-negative, got {key}")
    return np.random.SeedSequence(entropy=int(seed), spawn_key=key)


def derive_seed(seed: int, *key: int) -> int:
    """Deterministic 64-bit child seed of ``seed`` for the stream ``key``."""
    state = _sequence(seed, key).generate_state(1, dtype=np.uint64)
    return int(state[0])


def make_rng(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for ``seed`` (optionally for the child stream ``key``)."""
    return np.random.Generator(np.random.PCG64(_sequence(seed, key)))
