"""Solver adapters around the algorithm functions."""

import logging

from ..core.model import RankingProfile, UtilityProfile
from .base import SolveResult, Solver
from .baselines import best_of_random, random_matching, top_ranked_proposal
from .dssar import dssar
from .gale_shapley import gale_shapley_reference
from .oracles import DEFAULT_CAP, exhaustive_optimal_welfare
from .rpr import rpr

logger = logging.getLogger(__name__)


class DssarSolver(Solver):
    name = "dssar"
    profile_kind = UtilityProfile

    def _solve(self, instance, seed):
        return SolveResult(dssar(instance))


class RprSolver(Solver):
    name = "rpr"
    profile_kind = RankingProfile

    def _solve(self, instance, seed):
        outcome = rpr(
            instance,
            self.config.get("iterations"),
            channel_order=self.config.get("channel_order"),
        )
        return SolveResult(outcome.matching, iterations=outcome.iterations_used, converged=outcome.converged)


class RandomSolver(Solver):
    name = "random"

    def _solve(self, instance, seed):
        return SolveResult(random_matching(instance, seed))


class BestOfRandomSolver(Solver):
    name = "best_of_random"

    def _solve(self, instance, seed):
        return SolveResult(best_of_random(instance, seed, self.config.get("repeats")))


class TopRankedSolver(Solver):
    name = "top_ranked"

    def _solve(self, instance, seed):
        return SolveResult(top_ranked_proposal(instance))


class OptimalSolver(Solver):
    name = "optimal"

    def _solve(self, instance, seed):
        result = exhaustive_optimal_welfare(instance, cap=self.config.get("cap") or DEFAULT_CAP)
        return SolveResult(result.best_matching)


class GaleShapleySolver(Solver):
    name = "gale_shapley"
    profile_kind = RankingProfile

    def _solve(self, instance, seed):
        return SolveResult(gale_shapley_reference(instance))
