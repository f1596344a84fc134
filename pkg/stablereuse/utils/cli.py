"""Command-line interface utilities for stablereuse."""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
from typing import List, Optional, TYPE_CHECKING

from ..core.config import GRAPH_KINDS, PROFILE_KINDS
from .solver_factory import list_available_solvers

if TYPE_CHECKING:  # pragma: no cover
    from ..core import ExperimentConfig

logger = logging.getLogger(__name__)

HELP_BANNER = """stablereuse (sreuse)
Stable channel reuse across socially constrained cells

Commands:
  gen             Generate a random instance
  solve           Run an algorithm on an instance file
  verify          Check admissibility, harmony and stability
  simulate        Run the CSMA simulation of DSSAR
  experiment      Monte Carlo experiment writing CSV tables
  counterexample  Search for graphs without a stable matching
"""

EXAMPLES = """Examples:
  sreuse gen --cells 6 --channels 3 --profile utility_shannon -o inst.json
  sreuse solve inst.json --alg dssar -o match.json
  sreuse verify inst.json match.json
  sreuse simulate inst.json --mode messages --delay 0.01
  sreuse experiment --config config/small_networks_ranking.json --trials 200
  sreuse counterexample -o counterexample.json
"""

CLI_ALGORITHMS = ["dssar", "rpr", "random", "best-of-random", "top-ranked", "optimal", "gale-shapley"]


def _int_list(value: str) -> List[int]:
    try:
        return [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value!r}")


def _edge_list(value: str) -> List[List[int]]:
    """Parse ``1-2,2-3`` into ``[[1, 2], [2, 3]]``."""
    edges = []
    for token in value.split(","):
        token = token.strip()
        if not token:
            continue
        parts = token.split("-")
        if len(parts) != 2:
            raise argparse.ArgumentTypeError(f"expected edges like 1-2, got {token!r}")
        try:
            edges.append([int(parts[0]), int(parts[1])])
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected edges like 1-2, got {token!r}")
    return edges


def _non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sreuse",
        description=HELP_BANNER,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EXAMPLES,
    )

    # Logging
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose (DEBUG) logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="Minimal output (WARNING and above only)")

    # Info commands
    parser.add_argument("--list-algorithms", action="store_true", help="List available algorithms and exit")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument(
        "--seed",
        type=_non_negative,
        help="Random seed (default: $SREUSE_SEED or 0)",
    )

    commands = parser.add_subparsers(dest="command", metavar="COMMAND")

    gen = commands.add_parser("gen", parents=[seeded], help="Generate a random instance")
    gen.add_argument("--cells", "-L", type=_positive, required=True, help="Number of cells L")
    gen.add_argument("--channels", "-S", type=int, required=True, help="Number of channels S, virtual included")
    gen.add_argument("--graph", choices=GRAPH_KINDS, default="geometric", help="Constraint graph family")
    gen.add_argument("--radius", type=float, help="Connection radius for geometric graphs")
    gen.add_argument("--sizes", type=_int_list, help="Clique sizes for disjoint_complete graphs, e.g. 2,3")
    gen.add_argument("--max-clique", type=_positive, default=6, help="Largest random clique (default: 6)")
    gen.add_argument("--edges", type=_edge_list, help="Directed edges for explicit graphs, e.g. 1-2,2-1")
    gen.add_argument("--profile", choices=PROFILE_KINDS, default="ranking_uniform", help="Preference profile family")
    gen.add_argument("--snr-db", type=float, help="SNR in dB for Shannon utilities")
    gen.add_argument("--output", "-o", type=Path, help="Instance file (default: standard output)")

    solve = commands.add_parser("solve", parents=[seeded], help="Run an algorithm on an instance file")
    solve.add_argument("instance", type=Path, help="Instance JSON file")
    solve.add_argument("--alg", "-a", choices=CLI_ALGORITHMS, required=True, help="Algorithm to run")
    solve.add_argument("--iterations", "-T", type=_positive, help="RP&R pass limit (default: L * S)")
    solve.add_argument("--channel-order", type=_int_list, help="RP&R channel order, e.g. 2,1")
    solve.add_argument("--repeats", type=_positive, help="Best-of-Random draws (default: L)")
    solve.add_argument("--cap", type=_positive, help="Enumeration cap for the optimal oracle")
    solve.add_argument("--output", "-o", type=Path, help="Matching file (default: standard output)")

    verify = commands.add_parser("verify", parents=[seeded], help="Check a matching against an instance")
    verify.add_argument("instance", type=Path, help="Instance JSON file")
    verify.add_argument("matching", type=Path, help="Matching JSON file")

    simulate = commands.add_parser("simulate", parents=[seeded], help="Run the CSMA simulation")
    simulate.add_argument("instance", type=Path, help="Utility instance JSON file")
    simulate.add_argument("--mode", "-m", choices=["csma", "messages"], default="csma",
                          help="Carrier sensing or control messages (default: csma)")
    simulate.add_argument("--delay", type=float, default=0.0, help="Control-message delay (default: 0)")
    simulate.add_argument("--output", "-o", type=Path, help="Trace CSV file (default: standard output)")
    simulate.add_argument("--matching-output", type=Path, help="Also write the final matching here")

    experiment = commands.add_parser("experiment", parents=[seeded], help="Run a Monte Carlo experiment")
    experiment.add_argument("--config", "-c", type=Path, help="Path to configuration file (JSON)")
    experiment.add_argument("--trials", type=_positive, help="Override number of trials")
    experiment.add_argument("--output-dir", type=Path, help="Override output directory")
    experiment.add_argument("--workers", type=_positive, help="Override worker process count")
    experiment.add_argument("--show-config", action="store_true", help="Display merged configuration and exit")

    counterexample = commands.add_parser("counterexample", parents=[seeded],
                                         help="Search for graphs without a stable matching")
    counterexample.add_argument("--instance", type=Path,
                                help="Ranking instance supplying the profile (default: built-in five-cell profile)")
    counterexample.add_argument("--output", "-o", type=Path, default=Path("counterexample.json"),
                                help="Report file (default: counterexample.json)")

    return parser


def parse_arguments(argv: Optional[list[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    return build_parser().parse_args(argv)


def setup_cli_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Setup console logging based on CLI flags."""
    if quiet:
        level = logging.WARNING
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )


def apply_cli_overrides(config: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    """Apply CLI argument overrides to an experiment configuration."""
    if getattr(args, "trials", None):
        logger.info("Overriding trials to: %s", args.trials)
        config.trials = args.trials

    if getattr(args, "seed", None) is not None:
        logger.info("Overriding seed to: %s", args.seed)
        config.seed = args.seed

    if getattr(args, "output_dir", None):
        logger.info("Overriding output directory to: %s", args.output_dir)
        config.output_path = Path(args.output_dir).expanduser()

    if getattr(args, "workers", None):
        logger.info("Overriding workers to: %s", args.workers)
        config.workers = args.workers

    if args.verbose:
        config.logging_config.level = "DEBUG"
    elif args.quiet:
        config.logging_config.level = "WARNING"

    return config


def handle_info_commands(args: argparse.Namespace, config: Optional[ExperimentConfig] = None) -> bool:
    """Handle informational commands that short-circuit normal execution."""
    if args.list_algorithms:
        algorithms = list_available_solvers()
        print("\nAvailable algorithms:")
        for name, description in algorithms.items():
            print(f"  - {name}: {description}")
        print()
        return True

    if getattr(args, "show_config", False) and config:
        print(json.dumps(config.to_dict(), indent=2))
        return True

    return False
