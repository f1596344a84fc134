"""Configuration management for experiments."""

import hashlib
import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from .errors import ConfigError

logger = logging.getLogger(__name__)

SEED_ENV_VAR = "SREUSE_SEED"

GRAPH_KINDS = ("geometric", "empty", "complete", "disjoint_complete", "random_forest", "explicit")
PROFILE_KINDS = ("ranking_uniform", "utility_shannon")
ALGORITHMS = ("dssar", "rpr", "random", "best_of_random", "top_ranked", "optimal")

DEFAULT_RADIUS = 0.3
DEFAULT_SNR_DB = 10.0
DEFAULT_ORACLE_CAP = 10**7
RPR_ITERATION_TOKENS = ("L", "LS")


def default_seed() -> int:
    """Seed used when none is given: ``$SREUSE_SEED`` or 0."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or not raw.strip():
        return 0
    try:
        seed = int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR}={raw!r} is not an integer")
    if seed < 0:
        raise ConfigError(f"{SEED_ENV_VAR} must be non-negative")
    return seed


@dataclass
class GraphSpec:
    """Constraint graph family and its parameters."""
    kind: str = "geometric"
    radius: float = DEFAULT_RADIUS
    sizes: Optional[List[int]] = None
    max_clique: int = 6
    edges: Optional[List[List[int]]] = None

    def validate(self) -> None:
        if self.kind not in GRAPH_KINDS:
            raise ConfigError(f"Unknown graph kind: {self.kind}. Available: {', '.join(GRAPH_KINDS)}")
        if self.kind == "geometric" and not 0 < self.radius <= 2 ** 0.5:
            raise ConfigError(f"geometric radius must lie in (0, sqrt(2)], got {self.radius}")
        if self.kind == "disjoint_complete":
            if self.sizes is not None and any(int(s) < 1 for s in self.sizes):
                raise ConfigError("clique sizes must be positive")
            if self.sizes is None and self.max_clique < 1:
                raise ConfigError("max_clique must be positive")
        if self.kind == "explicit" and self.edges is None:
            raise ConfigError("explicit graphs need an edge list")

    def fixed_cells(self) -> Optional[int]:
        """Number of cells this spec pins down, if any."""
        if self.kind == "disjoint_complete" and self.sizes is not None:
            return sum(int(s) for s in self.sizes)
        return None


@dataclass
class ProfileSpec:
    """Preference profile family."""
    kind: str = "ranking_uniform"
    snr_db: float = DEFAULT_SNR_DB

    def validate(self) -> None:
        if self.kind not in PROFILE_KINDS:
            raise ConfigError(f"Unknown profile kind: {self.kind}. Available: {', '.join(PROFILE_KINDS)}")

    @property
    def is_utility(self) -> bool:
        return self.kind == "utility_shannon"


@dataclass
class LoggingConfig:
    """Logging configuration."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    console: bool = True
    file: bool = False
    log_file: str = "experiment.log"


@dataclass
class ExperimentConfig:
    """Complete Monte Carlo experiment configuration."""
    trials: int = 100
    l_range: Tuple[int, int] = (3, 9)
    s_range: Tuple[int, int] = (2, 3)
    graph: GraphSpec = field(default_factory=GraphSpec)
    profile: ProfileSpec = field(default_factory=ProfileSpec)
    algorithms: List[str] = field(
        default_factory=lambda: ["rpr", "random", "best_of_random", "top_ranked", "optimal"]
    )
    seed: int = field(default_factory=default_seed)
    oracle_cap: int = DEFAULT_ORACLE_CAP
    output_path: Path = Path("results")
    workers: int = 1
    rpr_iterations: Optional[Union[int, str]] = None
    record_timing: bool = False
    progress_every: int = 500
    logging_config: LoggingConfig = field(default_factory=LoggingConfig)

    def __post_init__(self):
        if isinstance(self.output_path, str):
            self.output_path = Path(self.output_path).expanduser()
        self.l_range = tuple(int(v) for v in self.l_range)
        self.s_range = tuple(int(v) for v in self.s_range)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentConfig':
        """Create ExperimentConfig from dictionary.

        Args:
            data: Configuration dictionary

        Returns:
            ExperimentConfig instance
        """
        data = dict(data)
        graph = GraphSpec(**data.pop('graph', {}))
        profile = ProfileSpec(**data.pop('profile', {}))
        logging_config = LoggingConfig(**data.pop('logging', {}))
        return cls(graph=graph, profile=profile, logging_config=logging_config, **data)

    def to_dict(self) -> Dict[str, Any]:
        """Convert ExperimentConfig to dictionary.

        Returns:
            Configuration dictionary
        """
        return {
            'trials': self.trials,
            'l_range': list(self.l_range),
            's_range': list(self.s_range),
            'graph': asdict(self.graph),
            'profile': asdict(self.profile),
            'algorithms': list(self.algorithms),
            'seed': self.seed,
            'oracle_cap': self.oracle_cap,
            'output_path': str(self.output_path),
            'workers': self.workers,
            'rpr_iterations': self.rpr_iterations,
            'record_timing': self.record_timing,
            'progress_every': self.progress_every,
            'logging': asdict(self.logging_config),
        }

    def digest(self) -> str:
        """SHA-256 of the result-relevant configuration.

        Output location, worker count and logging do not change results and
        are left out so the same experiment always carries the same digest.
        """
        data = self.to_dict()
        for key in ('output_path', 'workers', 'logging', 'progress_every'):
            data.pop(key)
        canonical = json.dumps(data, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    def validate(self) -> None:
        """Check the configuration before any trial runs.

        Raises:
            ConfigError: If any setting is invalid
        """
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        lo_l, hi_l = self.l_range
        lo_s, hi_s = self.s_range
        if lo_l < 1 or hi_l < lo_l:
            raise ConfigError(f"invalid L range {self.l_range}")
        if lo_s < 2 or hi_s < lo_s:
            raise ConfigError(f"invalid S range {self.s_range} (S counts the virtual channel, so S >= 2)")
        self.graph.validate()
        self.profile.validate()

        fixed = self.graph.fixed_cells()
        if fixed is not None and (lo_l, hi_l) != (fixed, fixed):
            raise ConfigError(f"clique sizes sum to {fixed}, so l_range must be [{fixed}, {fixed}]")
        if self.graph.kind == "explicit":
            nodes = max((max(e) for e in self.graph.edges), default=0)
            if nodes > lo_l:
                raise ConfigError(f"explicit edges reference cell {nodes} but L can be {lo_l}")

        if not self.algorithms:
            raise ConfigError("no algorithms selected")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ConfigError(f"Unknown algorithms: {', '.join(unknown)}. Available: {', '.join(ALGORITHMS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise ConfigError("algorithms must not repeat")
        if "dssar" in self.algorithms and not self.profile.is_utility:
            raise ConfigError("dssar needs a utility profile")
        if "rpr" in self.algorithms and self.profile.is_utility:
            raise ConfigError("rpr needs a ranking profile")
        if isinstance(self.rpr_iterations, str):
            if self.rpr_iterations not in RPR_ITERATION_TOKENS:
                raise ConfigError(
                    f"rpr_iterations must be an integer or one of {', '.join(RPR_ITERATION_TOKENS)}"
                )
        elif self.rpr_iterations is not None and self.rpr_iterations < 1:
            raise ConfigError("rpr_iterations must be >= 1")
        if "optimal" in self.algorithms:
            space = hi_s ** hi_l
            if space > self.oracle_cap:
                raise ConfigError(
                    f"optimal needs S^L = {hi_s}^{hi_l} = {space} assignments, above oracle_cap {self.oracle_cap}"
                )

    def resolve_rpr_iterations(self, num_cells: int, num_channels: int) -> int:
        """Pass limit T for an instance: an integer, 'L', or 'LS' / None for L * S."""
        if self.rpr_iterations is None or self.rpr_iterations == "LS":
            return num_cells * num_channels
        if self.rpr_iterations == "L":
            return num_cells
        return int(self.rpr_iterations)

    def setup_logging(self):
        """Configure logging based on config settings."""
        handlers = []

        if self.logging_config.console:
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(logging.Formatter(self.logging_config.format))
            handlers.append(console_handler)

        if self.logging_config.file:
            self.output_path.mkdir(exist_ok=True, parents=True)
            file_handler = logging.FileHandler(self.output_path / self.logging_config.log_file)
            file_handler.setFormatter(logging.Formatter(self.logging_config.format))
            handlers.append(file_handler)

        logging.basicConfig(
            level=getattr(logging, self.logging_config.level),
            handlers=handlers or None,
            force=bool(handlers),
        )


def load_config(config_path: Optional[Path] = None) -> ExperimentConfig:
    """Load experiment configuration from file.

    Args:
        config_path: Path to configuration file. If None, looks for:
                    1. experiment.json in current directory
                    2. ~/.stablereuse/experiment.json
                    3. Uses default configuration

    Returns:
        ExperimentConfig instance

    Raises:
        FileNotFoundError: If specified config_path doesn't exist
        ConfigError: If configuration is invalid
    """
    if config_path:
        config_path = Path(config_path)
        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        logger.info(f"Loading configuration from {config_path}")
        with open(config_path) as f:
            data = _read_json(f, config_path)
    else:
        search_paths = [
            Path("experiment.json"),
            Path("~/.stablereuse/experiment.json").expanduser(),
        ]

        for path in search_paths:
            if path.exists():
                logger.info(f"Found configuration at {path}")
                with open(path) as f:
                    data = _read_json(f, path)
                break
        else:
            logger.warning("No configuration file found, using defaults")
            data = get_default_config()

    try:
        config = ExperimentConfig.from_dict(data)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"Invalid configuration: {e}")
    logger.info(f"Loaded configuration: {config.trials} trials, graph={config.graph.kind}, "
                f"profile={config.profile.kind}")
    return config


def _read_json(handle, path: Path) -> Dict[str, Any]:
    try:
        data = json.load(handle)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Invalid configuration JSON in {path}: line {e.lineno}: {e.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"Configuration in {path} must be a JSON object")
    return data


def get_default_config() -> Dict[str, Any]:
    """Get default configuration dictionary.

    Returns:
        Default configuration: the small-network preference-ranking setup
    """
    return {
        "trials": 100,
        "l_range": [3, 9],
        "s_range": [2, 3],
        "graph": {"kind": "geometric", "radius": DEFAULT_RADIUS},
        "profile": {"kind": "ranking_uniform"},
        "algorithms": ["rpr", "random", "best_of_random", "top_ranked", "optimal"],
        "seed": default_seed(),
        "oracle_cap": DEFAULT_ORACLE_CAP,
        "output_path": "results",
        "workers": 1,
        "rpr_iterations": None,
        "record_timing": False,
        "progress_every": 500,
        "logging": {
            "level": "INFO",
            "format": "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            "console": True,
            "file": False,
            "log_file": "experiment.log"
        }
    }
