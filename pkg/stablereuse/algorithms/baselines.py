"""Benchmark allocators: random, best of several random, top-ranked proposal."""

from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.model import Instance, Matching
from ..generators.rng import derive_seed, make_rng
from ..metrics import objective_key

logger = logging.getLogger(__name__)


def random_matching(instance: Instance, seed: int) -> Matching:
    """Harmonious matching built from uniformly drawn feasible (cell, channel) pairs.

    After each draw the cell leaves the pool, and the drawn channel is
    struck from the cell's neighbours.
    """
    rng = make_rng(seed)
    feasible = np.ones((instance.num_cells, instance.num_channels - 1), dtype=bool)
    assignment = [instance.virtual] * instance.num_cells
    while True:
        candidates = np.flatnonzero(feasible)
        if candidates.size == 0:
            break
        pick = int(candidates[rng.integers(candidates.size)])
        row, col = divmod(pick, feasible.shape[1])
        assignment[row] = col + 1
        feasible[row, :] = False
        near = [n - 1 for n in instance.constraints.neighbors(row + 1)]
        if near:
            feasible[near, col] = False
    return Matching(tuple(assignment))


def best_of_random(instance: Instance, seed: int, repeats: Optional[int] = None) -> Matching:
    """Best of ``repeats`` random matchings (default L), by total welfare or sum rate.

    Repeat ``k`` uses the child seed ``derive_seed(seed, k)`` for
    ``k = 1..repeats``; ties keep the earliest repeat.
    """
    repeats = instance.num_cells if repeats is None else int(repeats)
    if repeats < 1:
        raise InvalidArgumentError(f"repeats must be >= 1, got {repeats}")
    best = None
    best_key = None
    for k in range(1, repeats + 1):
        candidate = random_matching(instance, derive_seed(seed, k))
        key = objective_key(instance, candidate)
        if best is None or key > best_key:
            best, best_key = candidate, key
    return best


def top_ranked_proposal(instance: Instance) -> Matching:
    """Single round where every cell proposes to its favourite real channel.

    Each channel accepts proposers in its own preference order, skipping
    any proposer adjacent to one it already accepted.
    """
    oracle = instance.oracle
    tops = {cell: oracle.top_channel(cell) for cell in instance.cells}
    assignment = [instance.virtual] * instance.num_cells
    for channel in instance.real_channels:
        accepted = []
        for cell in oracle.channel_order(channel):
            if tops[cell] != channel:
                continue
            neighbours = instance.constraints.neighbors(cell)
            if any(other in neighbours for other in accepted):
                continue
            accepted.append(cell)
            assignment[cell - 1] = channel
    return Matching(tuple(assignment))
