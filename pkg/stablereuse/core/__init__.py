"""Core data model, predicates and configuration."""

from .config import ExperimentConfig, load_config
from .errors import (
    ConfigError,
    CounterexampleNotFoundError,
    EnumerationLimitError,
    InstanceParseError,
    InvalidArgumentError,
    PreconditionError,
    SppError,
    ValidationError,
)
from .model import (
    ConstraintGraph,
    Instance,
    Matching,
    PreferenceOracle,
    RankingProfile,
    UtilityProfile,
    connected_components,
    underlying_undirected,
)
from .predicates import (
    MatchingReport,
    check_matching,
    find_blocking_pair,
    find_harmony_violation,
    is_admissible,
    is_harmonious,
    is_stable,
    socially_available,
    socially_compatible,
)

__all__ = [
    'ExperimentConfig',
    'load_config',
    'ConfigError',
    'CounterexampleNotFoundError',
    'EnumerationLimitError',
    'InstanceParseError',
    'InvalidArgumentError',
    'PreconditionError',
    'SppError',
    'ValidationError',
    'ConstraintGraph',
    'Instance',
    'Matching',
    'PreferenceOracle',
    'RankingProfile',
    'UtilityProfile',
    'connected_components',
    'underlying_undirected',
    'MatchingReport',
    'check_matching',
    'find_blocking_pair',
    'find_harmony_violation',
    'is_admissible',
    'is_harmonious',
    'is_stable',
    'socially_available',
    'socially_compatible',
]
