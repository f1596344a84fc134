"""Factory for creating matching solvers."""

import logging
from typing import Any, Dict, Optional

from ..algorithms.base import SolveResult, Solver
from ..algorithms.solvers import (
    BestOfRandomSolver,
    DssarSolver,
    GaleShapleySolver,
    OptimalSolver,
    RandomSolver,
    RprSolver,
    TopRankedSolver,
)
from ..core.errors import InvalidArgumentError
from ..core.model import Instance

logger = logging.getLogger(__name__)


SOLVERS = {
    'dssar': DssarSolver,
    'rpr': RprSolver,
    'random': RandomSolver,
    'best_of_random': BestOfRandomSolver,
    'top_ranked': TopRankedSolver,
    'optimal': OptimalSolver,
    'gale_shapley': GaleShapleySolver,
}


def canonical_name(name: str) -> str:
    """Registry key for ``name``; CLI spellings use hyphens."""
    return (name or '').strip().lower().replace('-', '_')


def create_solver(name: str, settings: Optional[Dict[str, Any]] = None) -> Solver:
    """Create a solver by name.

    Args:
        name: Algorithm name, e.g. ``dssar`` or ``best-of-random``
        settings: Solver settings (``iterations``, ``channel_order``, ``repeats``, ``cap``)

    Returns:
        Configured solver instance

    Raises:
        InvalidArgumentError: If the algorithm name is unknown
    """
    key = canonical_name(name)
    if key not in SOLVERS:
        available = ', '.join(n.replace('_', '-') for n in SOLVERS)
        raise InvalidArgumentError(f"Unknown algorithm: {name}. Available algorithms: {available}")
    settings = {k: v for k, v in (settings or {}).items() if v is not None}
    logger.debug(f"Creating {key} solver with settings {settings}")
    return SOLVERS[key](config=settings)


def solve(name: str, instance: Instance, *, seed: int = 0, **settings: Any) -> SolveResult:
    """Create the named solver and run it once."""
    return create_solver(name, settings).solve(instance, seed)


def list_available_solvers() -> Dict[str, str]:
    """Get list of available algorithms.

    Returns:
        Dictionary mapping CLI algorithm names to descriptions
    """
    return {
        'dssar': 'Greedy stable assignment over a common utility matrix',
        'rpr': 'Re-Propose and Reject over preference rankings',
        'random': 'Random harmonious matching',
        'best-of-random': 'Best of L random matchings by welfare or sum rate',
        'top-ranked': 'One round of proposals to each cell\'s favourite channel',
        'optimal': 'Exhaustive search for the maximum-welfare harmonious matching',
        'gale-shapley': 'Channel-proposing deferred acceptance (complete graph, L = S - 1)',
    }
