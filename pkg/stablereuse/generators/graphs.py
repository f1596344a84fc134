"""Constraint graph generators.

The geometric model places cells uniformly in the unit square and links
every pair closer than the interference radius. The special families
(empty, complete, disjoint cliques, forests) are the graphs on which
RP&R is known or claimed to reach stability.
"""

from __future__ import annotations

import logging
from typing import List, Optional, Sequence

import numpy as np
from scipy.spatial.distance import pdist

from ..core.errors import InvalidArgumentError
from ..core.model import ConstraintGraph
from .rng import make_rng

logger = logging.getLogger(__name__)

SPECIAL_KINDS = ("empty", "complete", "disjoint_complete", "random_forest")


def _check_cells(num_cells: int) -> None:
    if num_cells < 1:
        raise InvalidArgumentError(f"L must be >= 1, got {num_cells}")


def gen_geometric_graph(seed: int, num_cells: int, radius: float) -> ConstraintGraph:
    """Random geometric graph on ``num_cells`` points in the unit square.

    Args:
        seed: Stream seed
        num_cells: Number of cells L
        radius: Interference radius; an edge joins points closer than this

    Returns:
        Symmetric constraint graph

    Raises:
        InvalidArgumentError: If ``radius`` is not positive
    """
    _check_cells(num_cells)
    if not radius > 0:
        raise InvalidArgumentError(f"radius must be > 0, got {radius}")
    rng = make_rng(seed)
    points = rng.random((num_cells, 2))
    if num_cells < 2:
        return ConstraintGraph.empty(num_cells)
    distances = pdist(points)
    rows, cols = np.triu_indices(num_cells, k=1)
    close = distances < radius
    edges = zip((rows[close] + 1).tolist(), (cols[close] + 1).tolist())
    return ConstraintGraph.from_undirected(num_cells, edges)


def complete_graph(num_cells: int) -> ConstraintGraph:
    _check_cells(num_cells)
    return ConstraintGraph.from_undirected(
        num_cells,
        ((a, b) for a in range(1, num_cells + 1) for b in range(a + 1, num_cells + 1)),
    )


def disjoint_complete_graph(sizes: Sequence[int], num_cells: Optional[int] = None) -> ConstraintGraph:
    """Block-diagonal union of cliques; cells are numbered clique by clique."""
    sizes = [int(s) for s in sizes]
    if not sizes or any(s < 1 for s in sizes):
        raise InvalidArgumentError(f"clique sizes must be positive, got {sizes}")
    total = sum(sizes)
    if num_cells is not None and total != num_cells:
        raise InvalidArgumentError(f"clique sizes {sizes} sum to {total}, expected L={num_cells}")
    edges = []
    start = 1
    for size in sizes:
        block = range(start, start + size)
        edges.extend((a, b) for a in block for b in block if a < b)
        start += size
    return ConstraintGraph.from_undirected(total, edges)


def random_forest(seed: int, num_cells: int) -> ConstraintGraph:
    """Random labelled forest.

    Cells are shuffled and cut into a random number of trees; inside a tree
    every cell after the first attaches to a uniformly chosen earlier one.
    """
    _check_cells(num_cells)
    rng = make_rng(seed)
    order = (rng.permutation(num_cells) + 1).tolist()
    num_trees = int(rng.integers(1, num_cells + 1))
    cuts = []
    if num_trees > 1:
        cuts = sorted(rng.choice(np.arange(1, num_cells), size=num_trees - 1, replace=False).tolist())
    bounds = [0] + cuts + [num_cells]
    edges = []
    for lo, hi in zip(bounds, bounds[1:]):
        tree = order[lo:hi]
        for position in range(1, len(tree)):
            parent = tree[int(rng.integers(0, position))]
            edges.append((parent, tree[position]))
    return ConstraintGraph.from_undirected(num_cells, edges)


def random_clique_sizes(seed: int, num_cells: int, max_size: int) -> List[int]:
    """Random composition of ``num_cells`` into parts no larger than ``max_size``."""
    _check_cells(num_cells)
    if max_size < 1:
        raise InvalidArgumentError(f"max_size must be >= 1, got {max_size}")
    rng = make_rng(seed)
    sizes = []
    remaining = num_cells
    while remaining:
        size = int(rng.integers(1, min(max_size, remaining) + 1))
        sizes.append(size)
        remaining -= size
    return sizes


def gen_special_graph(kind: str, num_cells: Optional[int] = None, *,
                      sizes: Optional[Sequence[int]] = None,
                      seed: Optional[int] = None) -> ConstraintGraph:
    """Build one of the special graph families.

    Args:
        kind: ``empty``, ``complete``, ``disjoint_complete`` or ``random_forest``
        num_cells: Number of cells L (optional for ``disjoint_complete``)
        sizes: Clique sizes for ``disjoint_complete``
        seed: Stream seed for ``random_forest``

    Returns:
        The constraint graph

    Raises:
        InvalidArgumentError: On an unknown kind or inconsistent parameters
    """
    if kind == "disjoint_complete":
        if sizes is None:
            raise InvalidArgumentError("disjoint_complete needs clique sizes")
        return disjoint_complete_graph(sizes, num_cells)
    if num_cells is None:
        raise InvalidArgumentError(f"{kind} graphs need L")
    if kind == "empty":
        _check_cells(num_cells)
        return ConstraintGraph.empty(num_cells)
    if kind == "complete":
        return complete_graph(num_cells)
    if kind == "random_forest":
        if seed is None:
            raise InvalidArgumentError("random_forest needs a seed")
        return random_forest(seed, num_cells)
    raise InvalidArgumentError(f"Unknown graph kind: {kind}. Available: {', '.join(SPECIAL_KINDS)}")
