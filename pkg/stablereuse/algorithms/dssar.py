"""DSSAR: greedy stable channel assignment over a common utility matrix.

Repeatedly assigns the globally best remaining (cell, channel) pair, then
removes the winner's other options and the winning channel from the
winner's neighbours. At most L rounds of an O(L S) argmax.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

import numpy as np

from ..core.model import Instance, Matching, UtilityProfile, check_profile_kind

logger = logging.getLogger(__name__)


def dssar_assignment_order(instance: Instance) -> List[Tuple[int, int]]:
    """The (cell, channel) assignments DSSAR makes, in the order it makes them.

    Ties in the argmax go to the smallest cell, then the smallest channel.

    Raises:
        InvalidArgumentError: If the instance has a ranking profile
    """
    check_profile_kind(instance, UtilityProfile, "dssar")
    working = np.array(instance.profile.utilities[:, :-1], dtype=np.float64, copy=True)
    order: List[Tuple[int, int]] = []
    for _ in range(instance.num_cells):
        # row-major flat argmax is the smallest-cell-then-channel tie-break
        flat = int(np.argmax(working))
        row, col = divmod(flat, working.shape[1])
        if working[row, col] <= 0:
            break
        cell, channel = row + 1, col + 1
        order.append((cell, channel))
        working[row, :] = 0.0
        neighbours = [n - 1 for n in instance.constraints.neighbors(cell)]
        if neighbours:
            working[neighbours, col] = 0.0
    logger.debug("dssar assigned %d of %d cells", len(order), instance.num_cells)
    return order


def dssar(instance: Instance) -> Matching:
    """Stable matching of a utility instance."""
    assignment = [instance.virtual] * instance.num_cells
    for cell, channel in dssar_assignment_order(instance):
        assignment[cell - 1] = channel
    return Matching(tuple(assignment))
