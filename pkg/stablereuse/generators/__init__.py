"""Instance generators, seeded streams and file formats."""

from .factory import GenConfig, generate_instance
from .graphs import (
    gen_geometric_graph,
    gen_special_graph,
    random_clique_sizes,
    random_forest,
)
from .profiles import gen_ranking_profile, gen_shannon_utilities, counterexample_instance
from .rng import STREAM_VERSION, derive_seed, make_rng
from .serialization import (
    instance_to_json,
    load_instance,
    load_matching,
    matching_to_dict,
    save_instance,
    save_matching,
)

__all__ = [
    'GenConfig',
    'generate_instance',
    'gen_geometric_graph',
    'gen_special_graph',
    'random_clique_sizes',
    'random_forest',
    'gen_ranking_profile',
    'gen_shannon_utilities',
    'counterexample_instance',
    'STREAM_VERSION',
    'derive_seed',
    'make_rng',
    'instance_to_json',
    'load_instance',
    'load_matching',
    'matching_to_dict',
    'save_instance',
    'save_matching',
]
