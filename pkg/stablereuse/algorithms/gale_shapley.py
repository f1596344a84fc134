"""Channel-proposing deferred acceptance for the one-to-one special case.

On a complete constraint graph no two cells can share a real channel, so
the problem is a stable marriage between cells and real channels.
"""

from __future__ import annotations

from collections import deque

from ..core.errors import InvalidArgumentError
from ..core.model import Instance, Matching, RankingProfile, check_profile_kind


def gale_shapley_reference(instance: Instance) -> Matching:
    """Channel-optimal stable matching of a complete-graph instance with ``L = S - 1``.

    Raises:
        InvalidArgumentError: On a utility profile, a non-complete graph or ``L != S - 1``
    """
    check_profile_kind(instance, RankingProfile, "gale_shapley_reference")
    if not instance.constraints.is_complete():
        raise InvalidArgumentError("gale_shapley_reference needs a complete constraint graph")
    if instance.num_cells != instance.num_channels - 1:
        raise InvalidArgumentError(
            f"gale_shapley_reference needs L = S - 1, got L={instance.num_cells}, S={instance.num_channels}"
        )

    oracle = instance.oracle
    cell_ranks = instance.profile.cell_ranks
    preferences = {s: oracle.channel_order(s) for s in instance.real_channels}
    next_choice = {s: 0 for s in instance.real_channels}
    held = {}
    free = deque(instance.real_channels)

    while free:
        channel = free.popleft()
        if next_choice[channel] >= instance.num_cells:
            continue
        cell = preferences[channel][next_choice[channel]]
        next_choice[channel] += 1
        current = held.get(cell)
        if current is None:
            held[cell] = channel
        elif cell_ranks[cell - 1, channel - 1] < cell_ranks[cell - 1, current - 1]:
            held[cell] = channel
            free.append(current)
        else:
            free.append(channel)

    assignment = [held.get(cell, instance.virtual) for cell in instance.cells]
    return Matching(tuple(assignment))
