"""Exhaustive oracles over all ``S^L`` total assignments.

Assignments are enumerated in lexicographic order of the tuple
``(phi(1), ..., phi(L))`` and processed in numpy blocks: a block of
consecutive indices is decoded in mixed radix with cell 1 as the most
significant digit. Block order therefore preserves the lexicographic
tie-break, and every reduction keeps the first maximum it sees.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ..core.errors import EnumerationLimitError
from ..core.model import Instance, Matching
from ..metrics import objective

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10**7
BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an exhaustive search.

    ``stable_set_size`` and ``solvable`` are None when stability was not
    counted. ``stable_matchings`` is filled only on request.
    """
    best_matching: Optional[Matching]
    best_value: Optional[float]
    stable_set_size: Optional[int] = None
    solvable: Optional[bool] = None
    assignments_checked: int = 0
    stable_matchings: Tuple[Matching, ...] = field(default=(), repr=False)


def assignment_space(instance: Instance) -> int:
    return instance.num_channels ** instance.num_cells


def check_enumeration_cap(instance: Instance, cap: int = DEFAULT_CAP) -> int:
    """Return ``S^L``, or raise if it exceeds ``cap``."""
    space = assignment_space(instance)
    if space > cap:
        raise EnumerationLimitError(
            f"S^L = {instance.num_channels}^{instance.num_cells} = {space} assignments "
            f"exceeds the enumeration cap {cap}"
        )
    return space


def iter_assignment_blocks(num_cells: int, num_channels: int,
                           block_size: int = BLOCK_SIZE) -> Iterator[Tuple[int, np.ndarray]]:
    """Yield ``(start, block)`` with ``block[k]`` the 0-based channels of assignment ``start + k``."""
    total = num_channels ** num_cells
    for start in range(0, total, block_size):
        remainder = np.arange(start, min(start + block_size, total), dtype=np.int64)
        block = np.empty((remainder.size, num_cells), dtype=np.int64)
        for position in range(num_cells - 1, -1, -1):
            block[:, position] = remainder % num_channels
            remainder //= num_channels
        yield start, block


class _BlockJudge:
    """Vectorised harmony, stability and objective over assignment blocks."""

    def __init__(self, instance: Instance):
        self.instance = instance
        self.virtual = instance.num_channels - 1
        self.edges = [(a - 1, b - 1) for a, b in instance.constraints.undirected_edges()]
        oracle = instance.oracle
        self.cell_scores = np.asarray(oracle.cell_scores, dtype=np.float64)
        channel_scores = np.asarray(oracle.channel_scores, dtype=np.float64)
        # justifiers[i][c]: neighbours of cell i that channel c strictly prefers to i
        self.justifiers: List[List[np.ndarray]] = []
        for i in range(instance.num_cells):
            near = np.array(sorted(instance.constraints.neighbors(i + 1)), dtype=np.int64) - 1
            per_channel = []
            for c in range(self.virtual):
                if near.size:
                    per_channel.append(near[channel_scores[near, c] > channel_scores[i, c]])
                else:
                    per_channel.append(near)
            self.justifiers.append(per_channel)
        self.rows = np.arange(instance.num_cells)

    def harmonious(self, block: np.ndarray) -> np.ndarray:
        ok = np.ones(block.shape[0], dtype=bool)
        for a, b in self.edges:
            ok &= ~((block[:, a] == block[:, b]) & (block[:, a] != self.virtual))
        return ok

    def blocked(self, block: np.ndarray) -> np.ndarray:
        """True where some (cell, real channel) pair blocks the assignment."""
        found = np.zeros(block.shape[0], dtype=bool)
        for i in range(self.instance.num_cells):
            current = self.cell_scores[i, block[:, i]]
            for c in range(self.virtual):
                wants = self.cell_scores[i, c] > current
                if not wants.any():
                    continue
                justifiers = self.justifiers[i][c]
                if justifiers.size:
                    wants &= ~np.any(block[:, justifiers] == c, axis=1)
                found |= wants
        return found

    def stable(self, block: np.ndarray) -> np.ndarray:
        ok = self.harmonious(block)
        ok[ok] = ~self.blocked(block[ok])
        return ok

    def keys(self, block: np.ndarray) -> np.ndarray:
        """Objective ordering keys (see ``metrics.objective_key``)."""
        instance = self.instance
        if instance.is_utility:
            return instance.profile.utilities[self.rows, block].sum(axis=1)
        real = block != self.virtual
        channel_ranks = instance.profile.channel_ranks[self.rows, block]
        cell_ranks = instance.profile.cell_ranks[self.rows, block]
        s_raw = np.where(real, instance.num_cells - channel_ranks + 1, 0).sum(axis=1)
        l_raw = (instance.num_channels - cell_ranks).sum(axis=1)
        return (s_raw * (instance.num_channels - 1) + l_raw * instance.num_cells).astype(np.float64)


def _to_matching(row: np.ndarray) -> Matching:
    return Matching(tuple((row + 1).tolist()))


def exhaustive_optimal_welfare(instance: Instance, *, cap: int = DEFAULT_CAP,
                               count_stable: bool = False) -> OracleResult:
    """Harmonious assignment of maximum objective (sum rate or total welfare).

    Ties go to the lexicographically smallest assignment.

    Args:
        instance: Any instance with ``S^L <= cap``
        cap: Enumeration cap
        count_stable: Also count the stable assignments

    Raises:
        EnumerationLimitError: If ``S^L`` exceeds ``cap``
    """
    space = check_enumeration_cap(instance, cap)
    judge = _BlockJudge(instance)
    best_key = -np.inf
    best_row = None
    stable_count = 0
    for _, block in iter_assignment_blocks(instance.num_cells, instance.num_channels):
        harmonious = judge.harmonious(block)
        keys = np.where(harmonious, judge.keys(block), -np.inf)
        k = int(np.argmax(keys))
        if keys[k] > best_key:
            best_key = keys[k]
            best_row = block[k].copy()
        if count_stable:
            stable_count += int(np.count_nonzero(judge.stable(block)))
    best = _to_matching(best_row)
    value = objective(instance, best)
    logger.debug("optimal oracle: %d assignments, best value %.6g", space, value)
    return OracleResult(
        best_matching=best,
        best_value=value,
        stable_set_size=stable_count if count_stable else None,
        solvable=stable_count >= 1 if count_stable else None,
        assignments_checked=space,
    )


def exhaustive_stable_search(instance: Instance, *, cap: int = DEFAULT_CAP,
                             collect: bool = False) -> OracleResult:
    """Count the stable assignments and return the lexicographically smallest one.

    Args:
        instance: Any instance with ``S^L <= cap``
        cap: Enumeration cap
        collect: Return every stable matching in lexicographic order

    Raises:
        EnumerationLimitError: If ``S^L`` exceeds ``cap``
    """
    space = check_enumeration_cap(instance, cap)
    judge = _BlockJudge(instance)
    count = 0
    first = None
    found: List[Matching] = []
    for _, block in iter_assignment_blocks(instance.num_cells, instance.num_channels):
        stable_rows = block[judge.stable(block)]
        if stable_rows.size == 0:
            continue
        count += stable_rows.shape[0]
        if first is None:
            first = _to_matching(stable_rows[0])
        if collect:
            found.extend(_to_matching(row) for row in stable_rows)
    logger.debug("stable search: %d of %d assignments stable", count, space)
    return OracleResult(
        best_matching=first,
        best_value=objective(instance, first) if first is not None else None,
        stable_set_size=count,
        solvable=count >= 1,
        assignments_checked=space,
        stable_matchings=tuple(found),
    )
