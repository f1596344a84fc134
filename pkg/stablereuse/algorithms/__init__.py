"""Matching algorithms, baselines and exhaustive oracles."""

from .base import SolveResult, Solver
from .baselines import best_of_random, random_matching, top_ranked_proposal
from .dssar import dssar, dssar_assignment_order
from .gale_shapley import gale_shapley_reference
from .oracles import OracleResult, exhaustive_optimal_welfare, exhaustive_stable_search
from .rpr import RprOutcome, rpr

__all__ = [
    'SolveResult',
    'Solver',
    'best_of_random',
    'random_matching',
    'top_ranked_proposal',
    'dssar',
    'dssar_assignment_order',
    'gale_shapley_reference',
    'OracleResult',
    'exhaustive_optimal_welfare',
    'exhaustive_stable_search',
    'RprOutcome',
    'rpr',
]
