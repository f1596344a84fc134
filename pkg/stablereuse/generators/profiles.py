"""Preference profile generators."""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.model import ConstraintGraph, Instance, RankingProfile, UtilityProfile
from .rng import make_rng

DEFAULT_SNR_DB = 10.0

COUNTEREXAMPLE_CELL_RANKS = (
    (1, 2, 3),
    (2, 1, 3),
    (1, 2, 3),
    (2, 1, 3),
    (1, 2, 3),
)
COUNTEREXAMPLE_CHANNEL_RANKS = (
    (2, 5, 1),
    (4, 2, 2),
    (3, 1, 3),
    (1, 4, 4),
    (5, 3, 5),
)


def _check_dims(num_cells: int, num_channels: int) -> None:
    if num_cells < 1:
        raise InvalidArgumentError(f"L must be >= 1, got {num_cells}")
    if num_channels < 2:
        raise InvalidArgumentError(f"S must be >= 2, got {num_channels}")


def gen_ranking_profile(seed: int, num_cells: int, num_channels: int) -> RankingProfile:
    """Uniformly random two-sided rankings.

    Each cell ranks the real channels by a uniform permutation and puts the
    virtual channel last. Each real channel ranks the cells by a uniform
    permutation; the virtual channel ranks cells by index.
    """
    _check_dims(num_cells, num_channels)
    rng = make_rng(seed)
    real = num_channels - 1
    cell_ranks = np.empty((num_cells, num_channels), dtype=np.int64)
    cell_ranks[:, :real] = rng.permuted(np.tile(np.arange(1, real + 1), (num_cells, 1)), axis=1)
    cell_ranks[:, real] = num_channels
    channel_ranks = np.empty((num_cells, num_channels), dtype=np.int64)
    column = np.arange(1, num_cells + 1)
    channel_ranks[:, :real] = rng.permuted(np.tile(column[:, None], (1, real)), axis=0)
    channel_ranks[:, real] = column
    return RankingProfile(cell_ranks, channel_ranks)


def shannon_rate(gain, snr_db: float):
    """Spectral efficiency ``log2(1 + g * 10^(snr_db/10))`` in bit/s/Hz."""
    return np.log2(1.0 + np.asarray(gain, dtype=np.float64) * 10.0 ** (snr_db / 10.0))


def gen_shannon_utilities(seed: int, num_cells: int, num_channels: int,
                          snr_db: float = DEFAULT_SNR_DB) -> UtilityProfile:
    """Shannon-rate utilities under unit-mean Rayleigh fading.

    Real-channel gains are i.i.d. exponential with mean 1. Any draw whose
    rate is not strictly positive is redrawn from the same stream.
    """
    _check_dims(num_cells, num_channels)
    if not np.isfinite(snr_db):
        raise InvalidArgumentError(f"snr_db must be finite, got {snr_db}")
    rng = make_rng(seed)
    rates = shannon_rate(rng.exponential(1.0, size=(num_cells, num_channels - 1)), snr_db)
    bad = ~(rates > 0)
    while bad.any():
        rates[bad] = shannon_rate(rng.exponential(1.0, size=int(bad.sum())), snr_db)
        bad = ~(rates > 0)
    utilities = np.zeros((num_cells, num_channels), dtype=np.float64)
    utilities[:, :-1] = rates
    return UtilityProfile(utilities)


def counterexample_profile() -> RankingProfile:
    return RankingProfile(np.array(COUNTEREXAMPLE_CELL_RANKS), np.array(COUNTEREXAMPLE_CHANNEL_RANKS))


def counterexample_instance(constraints: Optional[ConstraintGraph] = None) -> Instance:
    """Five cells and two real channels whose rankings admit an unsolvable graph.

    The constraint graph is supplied by the caller and defaults to empty;
    ``harness.counterexample.counterexample_search`` finds the graphs for
    which no stable matching exists.
    """
    graph = constraints if constraints is not None else ConstraintGraph.empty(5)
    return Instance(5, 3, graph, counterexample_profile())
