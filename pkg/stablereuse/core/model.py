"""Instance and matching data model.

Cells are numbered ``1..L`` and channels ``1..S``; channel ``S`` is the
virtual channel that stands for "unmatched". Numpy matrices are indexed
``[cell - 1, channel - 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from .errors import InvalidArgumentError, ValidationError

Edge = Tuple[int, int]


def underlying_undirected(directed_sets: Sequence[Iterable[int]]) -> Tuple[frozenset, ...]:
    """Build the symmetric adjacency of a set of directed constraint sets.

    Args:
        directed_sets: ``directed_sets[l - 1]`` is the constraint set of cell ``l``

    Returns:
        Tuple of neighbour sets, one per cell, where ``l1`` and ``l2`` are
        adjacent iff ``l2`` is in ``C_l1`` or ``l1`` is in ``C_l2``.

    Raises:
        InvalidArgumentError: On self-loops or out-of-range members
    """
    num_cells = len(directed_sets)
    adjacency = [set() for _ in range(num_cells)]
    for cell, members in enumerate(directed_sets, start=1):
        for other in members:
            other = int(other)
            if other == cell:
                raise InvalidArgumentError(f"self-loop on cell {cell}")
            if not 1 <= other <= num_cells:
                raise InvalidArgumentError(
                    f"constraint {cell}->{other} references a cell outside 1..{num_cells}"
                )
            adjacency[cell - 1].add(other)
            adjacency[other - 1].add(cell)
    return tuple(frozenset(neighbours) for neighbours in adjacency)


@dataclass(frozen=True)
class ConstraintGraph:
    """Directed social constraint sets plus their underlying undirected graph."""

    directed_sets: Tuple[frozenset, ...]
    adjacency: Tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        directed = tuple(frozenset(int(c) for c in members) for members in self.directed_sets)
        object.__setattr__(self, "directed_sets", directed)
        object.__setattr__(self, "adjacency", underlying_undirected(directed))

    @classmethod
    def empty(cls, num_cells: int) -> "ConstraintGraph":
        return cls(tuple(frozenset() for _ in range(num_cells)))

    @classmethod
    def from_edges(cls, num_cells: int, edges: Iterable[Sequence[int]]) -> "ConstraintGraph":
        """Build from directed edges ``(l, l')`` meaning ``l'`` is in ``C_l``."""
        sets = [set() for _ in range(num_cells)]
        for edge in edges:
            source, target = (int(v) for v in edge)
            if not 1 <= source <= num_cells:
                raise InvalidArgumentError(f"edge source {source} outside 1..{num_cells}")
            sets[source - 1].add(target)
        return cls(tuple(frozenset(s) for s in sets))

    @classmethod
    def from_undirected(cls, num_cells: int, edges: Iterable[Sequence[int]]) -> "ConstraintGraph":
        """Build symmetric constraint sets from undirected edges."""
        directed = []
        for edge in edges:
            a, b = (int(v) for v in edge)
            directed.extend([(a, b), (b, a)])
        return cls.from_edges(num_cells, directed)

    @property
    def num_cells(self) -> int:
        return len(self.directed_sets)

    def _check_cell(self, cell: int) -> None:
        if not 1 <= cell <= self.num_cells:
            raise InvalidArgumentError(f"cell {cell} outside 1..{self.num_cells}")

    def neighbors(self, cell: int) -> frozenset:
        self._check_cell(cell)
        return self.adjacency[cell - 1]

    def adjacent(self, cell_a: int, cell_b: int) -> bool:
        self._check_cell(cell_a)
        self._check_cell(cell_b)
        return cell_b in self.adjacency[cell_a - 1]

    def edges(self) -> list:
        """Directed edges, sorted."""
        return sorted(
            (cell, other)
            for cell, members in enumerate(self.directed_sets, start=1)
            for other in members
        )

    def undirected_edges(self) -> list:
        """Undirected edges ``(a, b)`` with ``a < b``, sorted."""
        return sorted(
            (cell, other)
            for cell, members in enumerate(self.adjacency, start=1)
            for other in members
            if cell < other
        )

    def is_complete(self) -> bool:
        return all(len(n) == self.num_cells - 1 for n in self.adjacency)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.num_cells + 1))
        graph.add_edges_from(self.undirected_edges())
        return graph


def connected_components(graph: ConstraintGraph) -> Tuple[Tuple[int, ...], ...]:
    """Connected components of the undirected graph, sorted by smallest member."""
    components = (tuple(sorted(c)) for c in nx.connected_components(graph.to_networkx()))
    return tuple(sorted(components, key=lambda c: c[0]))


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RankingProfile:
    """Two-sided preference rankings; rank 1 is the most preferred."""

    cell_ranks: np.ndarray
    channel_ranks: np.ndarray

    def __post_init__(self):
        cell_ranks = _frozen_array(self.cell_ranks, np.int64)
        channel_ranks = _frozen_array(self.channel_ranks, np.int64)
        object.__setattr__(self, "cell_ranks", cell_ranks)
        object.__setattr__(self, "channel_ranks", channel_ranks)
        self._validate()

    @property
    def shape(self) -> Tuple[int, int]:
        return self.cell_ranks.shape

    def _validate(self) -> None:
        if self.cell_ranks.ndim != 2 or self.cell_ranks.shape != self.channel_ranks.shape:
            raise ValidationError(
                f"R^L shape {self.cell_ranks.shape} and R^S shape "
                f"{self.channel_ranks.shape} must be equal L x S matrices"
            )
        num_cells, num_channels = self.cell_ranks.shape
        expected_row = np.arange(1, num_channels + 1)
        for cell in range(num_cells):
            if not np.array_equal(np.sort(self.cell_ranks[cell]), expected_row):
                raise ValidationError(f"R^L row {cell + 1} is not a permutation of 1..{num_channels}")
        if np.any(self.cell_ranks[:, -1] != num_channels):
            raise ValidationError(f"R^L virtual column must be all {num_channels}")
        expected_column = np.arange(1, num_cells + 1)
        for channel in range(num_channels):
            if not np.array_equal(np.sort(self.channel_ranks[:, channel]), expected_column):
                raise ValidationError(
                    f"R^S column {channel + 1} is not a permutation of 1..{num_cells}"
                )
        if not np.array_equal(self.channel_ranks[:, -1], expected_column):
            raise ValidationError("R^S virtual column must be the identity sequence")

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankingProfile):
            return NotImplemented
        return np.array_equal(self.cell_ranks, other.cell_ranks) and np.array_equal(
            self.channel_ranks, other.channel_ranks
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class UtilityProfile:
    """Common utility matrix; the virtual column is zero."""

    utilities: np.ndarray

    def __post_init__(self):
        utilities = _frozen_array(self.utilities, np.float64)
        object.__setattr__(self, "utilities", utilities)
        if utilities.ndim != 2 or utilities.shape[1] < 2:
            raise ValidationError(f"utility matrix must be L x S with S >= 2, got {utilities.shape}")
        if not np.all(np.isfinite(utilities)):
            raise ValidationError("utilities must be finite")
        if np.any(utilities[:, :-1] <= 0):
            raise ValidationError("real-channel utilities must be strictly positive")
        if np.any(utilities[:, -1] != 0):
            raise ValidationError("virtual-channel utilities must be zero")

    @property
    def shape(self) -> Tuple[int, int]:
        return self.utilities.shape

    def __eq__(self, other) -> bool:
        if not isinstance(other, UtilityProfile):
            return NotImplemented
        return np.array_equal(self.utilities, other.utilities)

    __hash__ = None


Profile = Union[RankingProfile, UtilityProfile]


@dataclass(frozen=True)
class Matching:
    """Total assignment of cells to channels; ``assignment[l - 1]`` is ``phi(l)``."""

    assignment: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))

    @classmethod
    def all_virtual(cls, num_cells: int, num_channels: int) -> "Matching":
        return cls((num_channels,) * num_cells)

    def __len__(self) -> int:
        return len(self.assignment)

    def channel_of(self, cell: int) -> int:
        return self.assignment[cell - 1]

    def occupants(self, channel: int) -> Tuple[int, ...]:
        return tuple(cell for cell, s in enumerate(self.assignment, start=1) if s == channel)

    def matched_count(self, virtual: int) -> int:
        return sum(1 for s in self.assignment if s != virtual)

    def __str__(self) -> str:
        return " ".join(str(s) for s in self.assignment)


@dataclass(frozen=True)
class Instance:
    """A complete problem statement."""

    num_cells: int
    num_channels: int
    constraints: ConstraintGraph
    profile: Profile

    def __post_init__(self):
        if self.num_cells < 1:
            raise ValidationError(f"L must be >= 1, got {self.num_cells}")
        if self.num_channels < 2:
            raise ValidationError(f"S must be >= 2, got {self.num_channels}")
        if self.constraints.num_cells != self.num_cells:
            raise ValidationError(
                f"constraint graph has {self.constraints.num_cells} cells, expected {self.num_cells}"
            )
        if not isinstance(self.profile, (RankingProfile, UtilityProfile)):
            raise ValidationError("profile must be a RankingProfile or a UtilityProfile")
        if self.profile.shape != (self.num_cells, self.num_channels):
            raise ValidationError(
                f"profile shape {self.profile.shape} does not match "
                f"L x S = {self.num_cells} x {self.num_channels}"
            )

    @property
    def virtual(self) -> int:
        return self.num_channels

    @property
    def real_channels(self) -> range:
        return range(1, self.num_channels)

    @property
    def cells(self) -> range:
        return range(1, self.num_cells + 1)

    @property
    def is_ranking(self) -> bool:
        return isinstance(self.profile, RankingProfile)

    @property
    def is_utility(self) -> bool:
        return isinstance(self.profile, UtilityProfile)

    @property
    def oracle(self) -> "PreferenceOracle":
        return PreferenceOracle(self)

    def with_constraints(self, constraints: ConstraintGraph) -> "Instance":
        return replace(self, constraints=constraints)

    def restrict(self, cells: Sequence[int]) -> "Instance":
        """Sub-instance on ``cells`` (renumbered ``1..k`` in the given order)."""
        cells = list(cells)
        if not cells or len(set(cells)) != len(cells):
            raise InvalidArgumentError("restrict needs a non-empty set of distinct cells")
        index = {cell: new for new, cell in enumerate(cells, start=1)}
        directed = []
        for cell in cells:
            if not 1 <= cell <= self.num_cells:
                raise InvalidArgumentError(f"cell {cell} outside 1..{self.num_cells}")
            directed.append(
                frozenset(index[o] for o in self.constraints.directed_sets[cell - 1] if o in index)
            )
        rows = np.array(cells) - 1
        if self.is_ranking:
            cell_ranks = self.profile.cell_ranks[rows]
            original = self.profile.channel_ranks[rows]
            channel_ranks = np.empty_like(original)
            for channel in range(self.num_channels - 1):
                order = np.argsort(original[:, channel], kind="stable")
                channel_ranks[order, channel] = np.arange(1, len(cells) + 1)
            channel_ranks[:, -1] = np.arange(1, len(cells) + 1)
            profile: Profile = RankingProfile(cell_ranks, channel_ranks)
        else:
            profile = UtilityProfile(self.profile.utilities[rows])
        return Instance(len(cells), self.num_channels, ConstraintGraph(tuple(directed)), profile)


class PreferenceOracle:
    """Strict-preference view shared by the ranking and utility models.

    Scores are "higher is better": ``-R`` for rankings, ``U`` for utilities.
    Equal scores give no strict preference either way.
    """

    def __init__(self, instance: Instance):
        self.instance = instance
        if instance.is_ranking:
            self.cell_scores = -instance.profile.cell_ranks.astype(np.float64)
            self.channel_scores = -instance.profile.channel_ranks.astype(np.float64)
        else:
            self.cell_scores = instance.profile.utilities
            self.channel_scores = instance.profile.utilities

    def _check(self, cell: int, channel: int) -> None:
        if not 1 <= cell <= self.instance.num_cells:
            raise InvalidArgumentError(f"cell {cell} outside 1..{self.instance.num_cells}")
        if not 1 <= channel <= self.instance.num_channels:
            raise InvalidArgumentError(f"channel {channel} outside 1..{self.instance.num_channels}")

    def cell_prefers(self, cell: int, channel_a: int, channel_b: int) -> bool:
        """True iff ``cell`` strictly prefers ``channel_a`` over ``channel_b``."""
        self._check(cell, channel_a)
        self._check(cell, channel_b)
        row = self.cell_scores[cell - 1]
        return bool(row[channel_a - 1] > row[channel_b - 1])

    def channel_prefers(self, channel: int, cell_a: int, cell_b: int) -> bool:
        """True iff ``channel`` strictly prefers ``cell_a`` over ``cell_b``."""
        self._check(cell_a, channel)
        self._check(cell_b, channel)
        column = self.channel_scores[:, channel - 1]
        return bool(column[cell_a - 1] > column[cell_b - 1])

    def channel_order(self, channel: int) -> Tuple[int, ...]:
        """Cells from most to least preferred by ``channel``; ties by cell index."""
        column = self.channel_scores[:, channel - 1]
        return tuple(int(i) + 1 for i in np.argsort(-column, kind="stable"))

    def top_channel(self, cell: int) -> int:
        """Most preferred real channel of ``cell``; ties by smallest index."""
        row = self.cell_scores[cell - 1, :-1]
        return int(np.argmax(row)) + 1


def check_profile_kind(instance: Instance, kind: type, operation: str) -> None:
    """Raise if ``instance`` does not carry a profile of ``kind``."""
    if not isinstance(instance.profile, kind):
        wanted = "utility" if kind is UtilityProfile else "ranking"
        raise InvalidArgumentError(f"{operation} requires a {wanted} profile")


def validate_matching(instance: Instance, matching: Matching) -> Optional[str]:
    """Return a description of why ``matching`` is not admissible, or None."""
    if len(matching) != instance.num_cells:
        return f"matching has {len(matching)} entries, expected {instance.num_cells}"
    for cell, channel in enumerate(matching.assignment, start=1):
        if not 1 <= channel <= instance.num_channels:
            return f"cell {cell} assigned to channel {channel} outside 1..{instance.num_channels}"
    return None
