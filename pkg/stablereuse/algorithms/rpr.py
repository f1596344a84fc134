"""RP&R: Re-Propose and Reject over two-sided preference rankings.

In every outer pass each real channel walks its preference list from the
top. A cell the channel is socially available to takes the channel when it
ranks it at least as well as its current match; a cell currently on the
channel that is no longer available to it is sent back to virtual. The
virtual channel never proposes since every cell ranks it last.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ..core.errors import InvalidArgumentError
from ..core.model import Instance, Matching, RankingProfile, check_profile_kind
from ..core.predicates import is_stable

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RprOutcome:
    """Result of an RP&R run.

    Attributes:
        matching: Final assignment
        iterations_used: Outer passes performed
        converged: True if a full pass changed nothing
        stable: Stability verdict of the final matching
    """
    matching: Matching
    iterations_used: int
    converged: bool
    stable: bool


def _resolve_channel_order(instance: Instance, channel_order: Optional[Sequence[int]]) -> list:
    real = list(instance.real_channels)
    if channel_order is None:
        return real
    order = [int(s) for s in channel_order]
    if sorted(order) != real:
        raise InvalidArgumentError(
            f"channel_order must be a permutation of the real channels 1..{instance.num_channels - 1}"
        )
    return order


def rpr(instance: Instance, iterations: Optional[int] = None, *,
        channel_order: Optional[Sequence[int]] = None) -> RprOutcome:
    """Run RP&R for at most ``iterations`` outer passes.

    Args:
        instance: Instance with a ranking profile
        iterations: Pass limit T; defaults to ``L * S``
        channel_order: Order in which real channels propose in each pass;
            defaults to index order

    On complete graphs ``L`` passes are enough only when ``L = S - 1``; with
    spare real channels a run can need more, so keep the default limit there.

    Returns:
        RprOutcome; the run stops early after a pass with no change

    Raises:
        InvalidArgumentError: On a utility profile, ``iterations < 1`` or a bad channel order
    """
    check_profile_kind(instance, RankingProfile, "rpr")
    limit = instance.num_cells * instance.num_channels if iterations is None else int(iterations)
    if limit < 1:
        raise InvalidArgumentError(f"iterations must be >= 1, got {iterations}")
    channels = _resolve_channel_order(instance, channel_order)

    cell_ranks = instance.profile.cell_ranks
    channel_ranks = instance.profile.channel_ranks
    oracle = instance.oracle
    virtual = instance.virtual
    proposal_lists = {s: oracle.channel_order(s) for s in channels}
    neighbours = [np.array(sorted(instance.constraints.neighbors(c)), dtype=np.int64) - 1
                  for c in instance.cells]
    phi = np.full(instance.num_cells, virtual, dtype=np.int64)

    converged = False
    used = 0
    for _ in range(limit):
        used += 1
        changed = False
        for s in channels:
            column = channel_ranks[:, s - 1]
            for cell in proposal_lists[s]:
                i = cell - 1
                near = neighbours[i]
                blocked = near.size and np.any((phi[near] == s) & (column[near] < column[i]))
                if not blocked:
                    if cell_ranks[i, s - 1] <= cell_ranks[i, phi[i] - 1] and phi[i] != s:
                        phi[i] = s
                        changed = True
                elif phi[i] == s:
                    phi[i] = virtual
                    changed = True
        if not changed:
            converged = True
            break

    matching = Matching(tuple(phi.tolist()))
    stable = is_stable(instance, matching)
    logger.debug("rpr finished after %d/%d passes (converged=%s, stable=%s)",
                 used, limit, converged, stable)
    return RprOutcome(matching=matching, iterations_used=used, converged=converged, stable=stable)
