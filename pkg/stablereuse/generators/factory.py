"""One-call instance generation from a ``GenConfig``."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from ..core.config import GraphSpec, ProfileSpec
from ..core.errors import ConfigError, InvalidArgumentError
from ..core.model import ConstraintGraph, Instance, RankingProfile, UtilityProfile
from .graphs import gen_geometric_graph, gen_special_graph, random_clique_sizes
from .profiles import gen_ranking_profile, gen_shannon_utilities
from .rng import GRAPH_STREAM, PROFILE_STREAM, SIZE_STREAM, derive_seed

logger = logging.getLogger(__name__)


@dataclass
class GenConfig:
    """Everything needed to draw one instance."""
    seed: int
    num_cells: int
    num_channels: int
    graph: GraphSpec = field(default_factory=GraphSpec)
    profile: ProfileSpec = field(default_factory=ProfileSpec)

    def validate(self) -> None:
        if self.num_cells < 1:
            raise InvalidArgumentError(f"L must be >= 1, got {self.num_cells}")
        if self.num_channels < 2:
            raise InvalidArgumentError(f"S must be >= 2, got {self.num_channels}")
        try:
            self.graph.validate()
            self.profile.validate()
        except ConfigError as e:
            raise InvalidArgumentError(str(e)) from e
        if self.graph.kind == "disjoint_complete" and self.graph.sizes is not None:
            total = sum(int(s) for s in self.graph.sizes)
            if total != self.num_cells:
                raise InvalidArgumentError(
                    f"clique sizes {self.graph.sizes} sum to {total}, expected L={self.num_cells}"
                )


def build_graph(spec: GraphSpec, seed: int, num_cells: int) -> ConstraintGraph:
    """Draw the constraint graph described by ``spec`` from the stream ``seed``."""
    if spec.kind == "geometric":
        return gen_geometric_graph(seed, num_cells, spec.radius)
    if spec.kind == "explicit":
        return ConstraintGraph.from_edges(num_cells, spec.edges or [])
    if spec.kind == "disjoint_complete":
        sizes = spec.sizes
        if sizes is None:
            sizes = random_clique_sizes(derive_seed(seed, SIZE_STREAM), num_cells, spec.max_clique)
        return gen_special_graph("disjoint_complete", num_cells, sizes=sizes)
    return gen_special_graph(spec.kind, num_cells, seed=seed)


def build_profile(spec: ProfileSpec, seed: int, num_cells: int,
                  num_channels: int) -> RankingProfile | UtilityProfile:
    if spec.is_utility:
        return gen_shannon_utilities(seed, num_cells, num_channels, spec.snr_db)
    return gen_ranking_profile(seed, num_cells, num_channels)


def generate_instance(config: GenConfig) -> Instance:
    """Draw an instance; graph and profile use distinct child streams of ``config.seed``.

    Raises:
        InvalidArgumentError: If the configuration is inconsistent
    """
    config.validate()
    graph = build_graph(config.graph, derive_seed(config.seed, GRAPH_STREAM), config.num_cells)
    profile = build_profile(
        config.profile, derive_seed(config.seed, PROFILE_STREAM), config.num_cells, config.num_channels
    )
    instance = Instance(config.num_cells, config.num_channels, graph, profile)
    logger.debug(
        "Generated instance seed=%d L=%d S=%d graph=%s edges=%d profile=%s",
        config.seed, config.num_cells, config.num_channels, config.graph.kind,
        len(graph.undirected_edges()), config.profile.kind,
    )
    return instance
