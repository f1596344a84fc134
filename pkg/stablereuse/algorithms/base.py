"""Common interface for matching algorithms."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
import logging
from typing import Any, Dict, Optional

from ..core.model import Instance, Matching, check_profile_kind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolveResult:
    """A matching plus the run statistics the algorithm reports."""
    matching: Matching
    iterations: Optional[int] = None
    converged: Optional[bool] = None


class Solver(ABC):
    """Abstract base class for matching algorithms.

    Subclasses set ``name`` and, when they only accept one preference
    model, ``profile_kind``.
    """

    name: str = ""
    profile_kind: Optional[type] = None

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        """Initialize the solver.

        Args:
            config: Optional solver-specific settings
        """
        self.config = config or {}

    def supports(self, instance: Instance) -> bool:
        return self.profile_kind is None or isinstance(instance.profile, self.profile_kind)

    def solve(self, instance: Instance, seed: int = 0) -> SolveResult:
        """Run the algorithm on ``instance``.

        Args:
            instance: Problem instance
            seed: Stream seed; ignored by deterministic algorithms

        Returns:
            SolveResult

        Raises:
            InvalidArgumentError: If the instance has the wrong preference model
        """
        if not self.supports(instance):
            check_profile_kind(instance, self.profile_kind, self.name)
        return self._solve(instance, seed)

    @abstractmethod
    def _solve(self, instance: Instance, seed: int) -> SolveResult:
        pass

