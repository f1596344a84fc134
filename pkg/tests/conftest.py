"""
Pytest configuration and shared fixtures for stablereuse tests.
"""

import pytest
import json
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

# Add parent directory to path for imports
import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from stablereuse.core.config import GraphSpec, ProfileSpec
from stablereuse.core.model import ConstraintGraph, Instance, RankingProfile, UtilityProfile
from stablereuse.generators import GenConfig, generate_instance, counterexample_instance


# ==================== Instance Builders ====================

def utility_instance(utilities, edges: Sequence = ()) -> Instance:
    """Utility instance from a matrix and undirected edges."""
    matrix = np.asarray(utilities, dtype=np.float64)
    num_cells, num_channels = matrix.shape
    return Instance(num_cells, num_channels,
                    ConstraintGraph.from_undirected(num_cells, edges), UtilityProfile(matrix))


def ranking_instance(cell_ranks, channel_ranks, edges: Sequence = ()) -> Instance:
    """Ranking instance from R^L, R^S and undirected edges."""
    profile = RankingProfile(np.asarray(cell_ranks), np.asarray(channel_ranks))
    num_cells, num_channels = profile.shape
    return Instance(num_cells, num_channels,
                    ConstraintGraph.from_undirected(num_cells, edges), profile)


def seeded_instance(seed: int, num_cells: int, num_channels: int, graph: str = "geometric",
                    profile: str = "ranking_uniform", sizes: Optional[Sequence[int]] = None,
                    radius: float = 0.3) -> Instance:
    """Instance drawn through the generator factory."""
    return generate_instance(GenConfig(
        seed=seed,
        num_cells=num_cells,
        num_channels=num_channels,
        graph=GraphSpec(kind=graph, radius=radius, sizes=list(sizes) if sizes else None),
        profile=ProfileSpec(kind=profile),
    ))


# ==================== Instance Fixtures ====================

@pytest.fixture
def edge_utility_instance():
    """L=2, S=2, edge (1,2), U=[[5,0],[3,0]]."""
    return utility_instance([[5, 0], [3, 0]], [(1, 2)])


@pytest.fixture
def five_cell():
    """Five cells, two real channels, empty graph."""
    return counterexample_instance()


@pytest.fixture
def make_instance():
    """Factory fixture for seeded instances."""
    return seeded_instance


# ==================== File Fixtures ====================

@pytest.fixture
def instance_file(tmp_path):
    """Write a small utility instance document and return its path."""
    path = tmp_path / "instance.json"
    path.write_text(json.dumps({
        "L": 2,
        "S": 2,
        "constraints": [[1, 2]],
        "utility": {"U": [[5, 0], [3, 0]]},
    }))
    return path


@pytest.fixture
def small_experiment_dict(tmp_path):
    """A fast ranking experiment writing into a temporary directory."""
    return {
        "trials": 12,
        "l_range": [3, 5],
        "s_range": [2, 3],
        "graph": {"kind": "geometric", "radius": 0.4},
        "profile": {"kind": "ranking_uniform"},
        "algorithms": ["rpr", "random", "best_of_random", "top_ranked", "optimal"],
        "seed": 7,
        "output_path": str(tmp_path / "results"),
        "progress_every": 0,
        "logging": {"console": False, "file": False},
    }


@pytest.fixture
def make_utility():
    """Factory fixture for hand-written utility instances."""
    return utility_instance


@pytest.fixture
def make_ranking():
    """Factory fixture for hand-written ranking instances."""
    return ranking_instance
