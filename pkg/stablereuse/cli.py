#!/usr/bin/env python3
"""Command-line entry point for stablereuse (sreuse)."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from .core import SppError, load_config
from .core.config import GraphSpec, ProfileSpec, default_seed
from .core.predicates import check_matching
from .generators import (
    GenConfig,
    generate_instance,
    instance_to_json,
    load_instance,
    matching_to_dict,
    save_instance,
    save_matching,
)
from .harness import counterexample_search, format_report, run_experiment, save_counterexample_report, verify
from .harness.export import trace_digest, write_trace
from .simulation import simulate_csma
from .utils import create_solver, parse_arguments, setup_cli_logging
from .utils.cli import apply_cli_overrides, handle_info_commands
from .utils.diagnostics import ExperimentDiagnostics

logger = logging.getLogger(__name__)


def _seed(args: argparse.Namespace) -> int:
    return args.seed if args.seed is not None else default_seed()


def generate(args: argparse.Namespace) -> int:
    """Write one random instance."""
    graph = GraphSpec(kind=args.graph, max_clique=args.max_clique, sizes=args.sizes, edges=args.edges)
    if args.radius is not None:
        graph.radius = args.radius
    profile = ProfileSpec(kind=args.profile)
    if args.snr_db is not None:
        profile.snr_db = args.snr_db

    seed = _seed(args)
    instance = generate_instance(GenConfig(
        seed=seed,
        num_cells=args.cells,
        num_channels=args.channels,
        graph=graph,
        profile=profile,
    ))
    if args.output:
        save_instance(instance, args.output)
        logger.info("Instance L=%d S=%d (seed %d) written to %s",
                    instance.num_cells, instance.num_channels, seed, args.output)
    else:
        sys.stdout.write(instance_to_json(instance))
    return 0


def solve_instance(args: argparse.Namespace) -> int:
    """Run one algorithm and write the matching with its verdicts."""
    instance = load_instance(args.instance)
    solver = create_solver(args.alg, {
        "iterations": args.iterations,
        "channel_order": args.channel_order,
        "repeats": args.repeats,
        "cap": args.cap,
    })
    result = solver.solve(instance, _seed(args))
    report = check_matching(instance, result.matching)

    meta = {"algorithm": solver.name, "stable": report.stable, "harmonious": report.harmonious}
    if result.iterations is not None:
        meta["iterations"] = result.iterations
        meta["converged"] = result.converged
    if args.output:
        save_matching(result.matching, args.output, **meta)
        logger.info("Matching written to %s", args.output)
    else:
        print(json.dumps(matching_to_dict(result.matching, **meta), indent=2))
    logger.info("%s: %s -> %s", solver.name, result.matching, report.describe())
    return 0


def verify_matching(args: argparse.Namespace) -> int:
    """Print verdicts; exit status 0 iff the matching is stable."""
    report = verify(args.instance, args.matching)
    print(format_report(report))
    return 0 if report.stable else 1


def simulate(args: argparse.Namespace) -> int:
    """Run the CSMA simulation and write its event trace as CSV."""
    instance = load_instance(args.instance)
    trace = simulate_csma(instance, args.mode, delay=args.delay)
    digest = trace_digest(instance, trace.mode, args.delay)
    if args.output:
        write_trace(trace, args.output, digest)
        logger.info("Trace with %d events written to %s", len(trace.events), args.output)
    else:
        write_trace(trace, sys.stdout, digest)
    if args.matching_output:
        save_matching(trace.matching, args.matching_output, mode=trace.mode)
    logger.info("Final matching: %s", trace.matching)
    return 0


def experiment(args: argparse.Namespace) -> int:
    """Run a Monte Carlo experiment from a config file."""
    config = load_config(args.config)
    config = apply_cli_overrides(config, args)
    if handle_info_commands(args, config):
        return 0
    config.validate()
    config.setup_logging()

    report = run_experiment(config, ExperimentDiagnostics(config))
    for key, path in report.paths.items():
        print(f"{key}: {path}")
    return 0


def counterexample(args: argparse.Namespace) -> int:
    """Search every graph on the profile's cells for one with no stable matching."""
    instance = load_instance(args.instance) if args.instance else None
    report = counterexample_search(instance)
    save_counterexample_report(report, args.output)
    print(f"{len(report.graphs)} of {report.graphs_checked} graphs admit no stable matching")
    for edges in report.graphs:
        print("  " + " ".join(f"{a}-{b}" for a, b in edges))
    return 0


COMMANDS = {
    "gen": generate,
    "solve": solve_instance,
    "verify": verify_matching,
    "simulate": simulate,
    "experiment": experiment,
    "counterexample": counterexample,
}


def _report_error(exc: BaseException) -> None:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)


def main(argv: Optional[list[str]] = None) -> int:
    """CLI entry point used by the console scripts."""
    args = parse_arguments(argv)
    setup_cli_logging(args.verbose, args.quiet)

    if handle_info_commands(args):
        return 0

    if args.command is None:
        print("sreuse: a command is required (see --help)", file=sys.stderr)
        return 2

    try:
        return COMMANDS[args.command](args)
    except (SppError, OSError) as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        _report_error(exc)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
