"""Full-count correctness and quality runs.

These draw thousands of seeded instances and take minutes; select them
with ``-m acceptance`` or skip them with ``-m "not slow"``.
"""

import logging
import time

import numpy as np
import pytest

from stablereuse.algorithms import (
    dssar, dssar_assignment_order, exhaustive_optimal_welfare, exhaustive_stable_search,
    gale_shapley_reference, rpr,
)
from stablereuse.core.config import ExperimentConfig, GraphSpec, ProfileSpec
from stablereuse.core.model import Matching, connected_components
from stablereuse.core.predicates import is_harmonious, is_stable
from stablereuse.generators import GenConfig, generate_instance, make_rng
from stablereuse.generators.serialization import instance_to_json
from stablereuse.harness import counterexample_search, run_experiment
from stablereuse.metrics import objective
from stablereuse.simulation import simulate_csma
from stablereuse.utils.solver_factory import create_solver

logger = logging.getLogger(__name__)

pytestmark = [pytest.mark.performance, pytest.mark.slow, pytest.mark.acceptance]


def _draw(seed, l_range, s_range, graph, profile="ranking_uniform", **graph_args):
    sizes = make_rng(seed, 99)
    num_cells = int(sizes.integers(l_range[0], l_range[1] + 1))
    num_channels = int(sizes.integers(s_range[0], s_range[1] + 1))
    return generate_instance(GenConfig(
        seed=seed, num_cells=num_cells, num_channels=num_channels,
        graph=GraphSpec(kind=graph, **graph_args), profile=ProfileSpec(kind=profile),
    ))


def _tops(instance):
    return tuple(int(np.argmin(row[:-1])) + 1 for row in instance.profile.cell_ranks)


def test_dssar_always_stable():
    started = time.perf_counter()
    for seed in range(10_000):
        instance = _draw(seed, (3, 100), (2, 10), "geometric", "utility_shannon")
        matching = dssar(instance)
        assert is_harmonious(instance, matching) and is_stable(instance, matching), seed
    logger.info(f"DSSAR stability run took {time.perf_counter() - started:.1f}s")


def test_simulation_reproduces_dssar():
    for seed in range(1_000):
        instance = _draw(seed, (3, 40), (2, 10), "geometric", "utility_shannon")
        order = dssar_assignment_order(instance)
        expected = dssar(instance)
        for mode in ("csma", "messages"):
            trace = simulate_csma(instance, mode)
            assert trace.matching == expected, (seed, mode)
            assert trace.transmit_order() == order, (seed, mode)


def test_empty_graph_one_pass():
    for seed in range(1_000):
        instance = _draw(seed, (1, 60), (2, 10), "empty")
        outcome = rpr(instance, 1)
        assert outcome.stable and outcome.matching == Matching(_tops(instance)), seed


def test_complete_graph_matches_deferred_acceptance():
    for seed in range(1_000):
        num_cells = 1 + seed % 8
        instance = generate_instance(GenConfig(
            seed=seed, num_cells=num_cells, num_channels=num_cells + 1,
            graph=GraphSpec(kind="complete"), profile=ProfileSpec(),
        ))
        outcome = rpr(instance, num_cells)
        assert outcome.stable, seed
        assert outcome.matching == gale_shapley_reference(instance), seed


def test_disjoint_cliques_within_largest_clique():
    for seed in range(1_000):
        rng = make_rng(seed, 98)
        sizes = [int(s) for s in rng.integers(1, 7, size=int(rng.integers(2, 5)))]
        instance = generate_instance(GenConfig(
            seed=seed, num_cells=sum(sizes), num_channels=int(rng.integers(2, 11)),
            graph=GraphSpec(kind="disjoint_complete", sizes=sizes), profile=ProfileSpec(),
        ))
        outcome = rpr(instance, max(sizes))
        assert outcome.stable, seed
        for component in connected_components(instance.constraints):
            alone = rpr(instance.restrict(component), max(sizes)).matching
            assert tuple(outcome.matching.channel_of(c) for c in component) == alone.assignment, seed


def test_acyclic_graphs_reach_stability():
    failures = []
    for seed in range(10_000):
        instance = _draw(seed, (3, 40), (2, 10), "random_forest")
        if not rpr(instance, instance.num_cells).stable:
            logger.warning(f"rpr unstable on a forest (seed {seed}): {instance_to_json(instance)}")
            failures.append(seed)
    assert failures == []


def test_counterexample_search_is_fast():
    started = time.perf_counter()
    report = counterexample_search()
    assert report.graphs and not report.contains([])
    assert time.perf_counter() - started < 10


def test_oracle_self_consistency():
    checked = 0
    seed = 0
    while checked < 200:
        profile = "utility_shannon" if seed % 2 else "ranking_uniform"
        instance = _draw(seed, (3, 8), (2, 4), "geometric", profile, radius=0.5)
        seed += 1
        if instance.num_channels ** instance.num_cells > 10**5:
            continue
        best = exhaustive_optimal_welfare(instance).best_value
        names = ["random", "best_of_random", "top_ranked"]
        names.append("dssar" if instance.is_utility else "rpr")
        for name in names:
            matching = create_solver(name).solve(instance, seed).matching
            assert objective(instance, matching) <= best + 1e-9, (seed, name)
        if instance.is_utility:
            stable_set = exhaustive_stable_search(instance, collect=True).stable_matchings
            assert dssar(instance) in stable_set, seed
        checked += 1


@pytest.mark.parametrize("profile,leader,column", [
    ("ranking_uniform", "rpr", "mean_total_welfare"),
    ("utility_shannon", "dssar", "mean_sum_rate"),
])
def test_small_network_quality(tmp_path, profile, leader, column):
    config = ExperimentConfig(
        trials=2_000,
        l_range=(3, 9),
        s_range=(2, 3),
        graph=GraphSpec(kind="geometric", radius=0.3),
        profile=ProfileSpec(kind=profile),
        algorithms=[leader, "random", "best_of_random", "top_ranked", "optimal"],
        seed=20240101,
        output_path=tmp_path,
        workers=4,
        progress_every=0,
    )
    summary = run_experiment(config).summary.set_index("algorithm")
    assert summary.loc[leader, "ratio_to_optimal"] >= 0.93
    means = summary[column]
    assert means[leader] > means["best_of_random"] > means["top_ranked"] > means["random"]
