"""Compatibility, availability, harmony and stability predicates.

All functions are pure. The stability check scans every (cell, channel)
pair, which is O(L^2 S) in the worst case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import InvalidArgumentError, ValidationError
from .model import Instance, Matching, PreferenceOracle, validate_matching


def _check_cell(instance: Instance, cell: int) -> None:
    if not 1 <= cell <= instance.num_cells:
        raise InvalidArgumentError(f"cell {cell} outside 1..{instance.num_cells}")


def _require_admissible(instance: Instance, matching: Matching) -> None:
    problem = validate_matching(instance, matching)
    if problem:
        raise ValidationError(problem)


def socially_compatible(instance: Instance, cell_a: int, cell_b: int) -> bool:
    """True iff neither cell lists the other in its constraint set."""
    _check_cell(instance, cell_a)
    _check_cell(instance, cell_b)
    if cell_a == cell_b:
        raise InvalidArgumentError("compatibility is defined for distinct cells")
    return not instance.constraints.adjacent(cell_a, cell_b)


def socially_available(instance: Instance, matching: Matching, channel: int, cell: int,
                       oracle: Optional[PreferenceOracle] = None) -> bool:
    """True iff every occupant of ``channel`` it prefers over ``cell`` is compatible with ``cell``.

    Only real channels are accepted; the virtual channel is available to
    everyone and callers handle it themselves.
    """
    _check_cell(instance, cell)
    if not 1 <= channel < instance.num_channels:
        raise InvalidArgumentError(
            f"availability is defined for real channels 1..{instance.num_channels - 1}, got {channel}"
        )
    oracle = oracle or instance.oracle
    neighbours = instance.constraints.neighbors(cell)
    for other, assigned in enumerate(matching.assignment, start=1):
        if assigned != channel or other == cell:
            continue
        if other in neighbours and oracle.channel_prefers(channel, other, cell):
            return False
    return True


def find_harmony_violation(instance: Instance, matching: Matching) -> Optional[Tuple[int, int, int]]:
    """First adjacent pair ``(l1, l2, s)`` sharing a real channel, or None."""
    _require_admissible(instance, matching)
    for cell_a, cell_b in instance.constraints.undirected_edges():
        channel = matching.channel_of(cell_a)
        if channel != instance.virtual and channel == matching.channel_of(cell_b):
            return cell_a, cell_b, channel
    return None


def is_harmonious(instance: Instance, matching: Matching) -> bool:
    return find_harmony_violation(instance, matching) is None


def is_admissible(instance: Instance, matching: Matching) -> bool:
    return validate_matching(instance, matching) is None


def find_blocking_pair(instance: Instance, matching: Matching,
                       oracle: Optional[PreferenceOracle] = None) -> Optional[Tuple[int, int]]:
    """First blocking pair ``(l, s)`` in (cell, channel) order, or None.

    ``(l, s)`` blocks when ``l`` strictly prefers real channel ``s`` to its
    own and no occupant of ``s`` that ``s`` strictly prefers over ``l`` is
    incompatible with ``l``.
    """
    _require_admissible(instance, matching)
    oracle = oracle or instance.oracle
    occupants = {}
    for cell, channel in enumerate(matching.assignment, start=1):
        occupants.setdefault(channel, []).append(cell)
    for cell in instance.cells:
        current = matching.channel_of(cell)
        neighbours = instance.constraints.neighbors(cell)
        for channel in instance.real_channels:
            if channel == current or not oracle.cell_prefers(cell, channel, current):
                continue
            justified = any(
                other in neighbours and oracle.channel_prefers(channel, other, cell)
                for other in occupants.get(channel, ())
            )
            if not justified:
                return cell, channel
    return None


def is_stable(instance: Instance, matching: Matching) -> bool:
    """True iff ``matching`` is harmonious and has no blocking pair."""
    if not is_harmonious(instance, matching):
        return False
    return find_blocking_pair(instance, matching) is None


@dataclass(frozen=True)
class MatchingReport:
    """Verdicts for a matching with the first witness of each failure."""

    admissible: bool
    harmonious: bool
    stable: bool
    admissibility_problem: Optional[str] = None
    harmony_violation: Optional[Tuple[int, int, int]] = None
    blocking_pair: Optional[Tuple[int, int]] = None

    def describe(self) -> str:
        if not self.admissible:
            return f"not admissible: {self.admissibility_problem}"
        if not self.harmonious:
            a, b, s = self.harmony_violation
            return f"not harmonious: cells {a} and {b} share channel {s}"
        if not self.stable:
            cell, channel = self.blocking_pair
            return f"unstable: blocking pair (cell {cell}, channel {channel})"
        return "stable"


def check_matching(instance: Instance, matching: Matching) -> MatchingReport:
    """Evaluate admissibility, harmony and stability in that order."""
    problem = validate_matching(instance, matching)
    if problem:
        return MatchingReport(False, False, False, admissibility_problem=problem)
    violation = find_harmony_violation(instance, matching)
    if violation:
        return MatchingReport(True, False, False, harmony_violation=violation)
    blocking = find_blocking_pair(instance, matching)
    return MatchingReport(True, True, blocking is None, blocking_pair=blocking)
