"""Experiment pipeline, counterexample search and verification."""

from .counterexample import CounterexampleReport, counterexample_search, save_counterexample_report
from .experiment import ExperimentReport, TrialRecord, run_experiment, run_trial
from .verify import format_report, verify

__all__ = [
    'CounterexampleReport',
    'counterexample_search',
    'save_counterexample_report',
    'ExperimentReport',
    'TrialRecord',
    'run_experiment',
    'run_trial',
    'format_report',
    'verify',
]
