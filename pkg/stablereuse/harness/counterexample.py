"""Search for constraint graphs on which a ranking profile has no stable matching.

Every undirected graph on the profile's cells is tried with the exhaustive
stability oracle. For the first unsolvable graph a refutation log records,
for each of the ``S^L`` assignments, the first condition it violates.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

from ..core.errors import CounterexampleNotFoundError, InvalidArgumentError
from ..core.model import ConstraintGraph, Instance, Matching
from ..core.predicates import check_matching
from ..generators.profiles import counterexample_instance
from ..algorithms.oracles import exhaustive_stable_search

logger = logging.getLogger(__name__)

MAX_SEARCH_CELLS = 6

Edges = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class RefutationEntry:
    assignment: Tuple[int, ...]
    verdict: str


@dataclass(frozen=True)
class CounterexampleReport:
    """Unsolvable graphs and the refutation log of the first one."""
    graphs: Tuple[Edges, ...]
    graphs_checked: int
    refutation_graph: Edges
    refutation: Tuple[RefutationEntry, ...]

    def contains(self, edges) -> bool:
        wanted = tuple(sorted(tuple(sorted(e)) for e in edges))
        return wanted in self.graphs

    def to_dict(self) -> dict:
        return {
            "graphs_checked": self.graphs_checked,
            "unsolvable_graphs": [[list(e) for e in graph] for graph in self.graphs],
            "refutation": {
                "graph": [list(e) for e in self.refutation_graph],
                "assignments": [
                    {"assignment": list(entry.assignment), "verdict": entry.verdict}
                    for entry in self.refutation
                ],
            },
        }


def refutation_log(instance: Instance) -> Tuple[RefutationEntry, ...]:
    """Verdict for every total assignment, in lexicographic order."""
    entries = []
    for assignment in itertools.product(range(1, instance.num_channels + 1), repeat=instance.num_cells):
        report = check_matching(instance, Matching(assignment))
        entries.append(RefutationEntry(tuple(assignment), report.describe()))
    return tuple(entries)


def counterexample_search(instance: Optional[Instance] = None) -> CounterexampleReport:
    """Enumerate all ``2^(L(L-1)/2)`` graphs for the profile of ``instance``.

    Args:
        instance: Supplies the ranking profile; its graph is ignored.
            Defaults to the five-cell, two-channel counterexample profile.

    Returns:
        CounterexampleReport listing every graph with no stable matching

    Raises:
        InvalidArgumentError: If the instance has more than six cells
        CounterexampleNotFoundError: If every graph admits a stable matching
    """
    base = instance if instance is not None else counterexample_instance()
    if base.num_cells > MAX_SEARCH_CELLS:
        raise InvalidArgumentError(
            f"graph search is limited to {MAX_SEARCH_CELLS} cells, got {base.num_cells}"
        )
    pairs = list(itertools.combinations(base.cells, 2))
    unsolvable: List[Edges] = []
    checked = 0
    for mask in range(1 << len(pairs)):
        edges = tuple(pair for bit, pair in enumerate(pairs) if mask >> bit & 1)
        candidate = base.with_constraints(ConstraintGraph.from_undirected(base.num_cells, edges))
        checked += 1
        if not exhaustive_stable_search(candidate).solvable:
            unsolvable.append(edges)

    logger.info(f"Checked {checked} graphs; {len(unsolvable)} admit no stable matching")
    if not unsolvable:
        raise CounterexampleNotFoundError(
            f"all {checked} constraint graphs admit a stable matching for this profile"
        )

    first = unsolvable[0]
    refuted = base.with_constraints(ConstraintGraph.from_undirected(base.num_cells, first))
    return CounterexampleReport(
        graphs=tuple(unsolvable),
        graphs_checked=checked,
        refutation_graph=first,
        refutation=refutation_log(refuted),
    )


def save_counterexample_report(report: CounterexampleReport, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(report.to_dict(), f, indent=2)
    logger.info(f"Counterexample report saved to {path}")
    return path
