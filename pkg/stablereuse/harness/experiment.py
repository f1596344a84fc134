"""Monte Carlo experiment pipeline.

Each trial draws L and S, generates an instance from the trial's own
child seed and runs every selected algorithm on it. Trials are independent,
so they can run on a process pool; results are gathered in trial order and
written as four CSV files:

* ``trials.csv``: one row per trial and algorithm;
* ``by_L.csv`` and ``by_S.csv``: means per (L or S, algorithm);
* ``summary.csv``: means per algorithm with stability, non-convergence
  and ratio-to-optimal columns.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from pathlib import Path
from typing import Dict, Iterator, List, Optional

import numpy as np
import pandas as pd

from ..core.config import ALGORITHMS, ExperimentConfig
from ..core.model import Instance
from ..core.predicates import is_harmonious, is_stable
from ..generators.factory import GenConfig, generate_instance
from ..generators.rng import ALGORITHM_STREAM, SIZE_STREAM, derive_seed, make_rng
from ..generators.serialization import instance_to_dict
from ..metrics import welfare_report
from ..utils.diagnostics import ExperimentDiagnostics
from ..utils.solver_factory import create_solver
from .export import write_csv

logger = logging.getLogger(__name__)

TRIAL_COLUMNS = [
    "trial", "L", "S", "algorithm", "assignment", "matched_count",
    "s_welfare", "l_welfare", "total_welfare", "sum_rate",
    "harmonious", "stable", "iterations", "converged",
]
AGGREGATE_COLUMNS = [
    "algorithm", "trials", "mean_total_welfare", "mean_s_welfare",
    "mean_l_welfare", "mean_sum_rate", "stable_rate",
]
SUMMARY_COLUMNS = AGGREGATE_COLUMNS + ["non_convergence_rate", "ratio_to_optimal"]
FLOAT_COLUMNS = ["s_welfare", "l_welfare", "total_welfare", "sum_rate"]

CSV_FILES = {
    "trials": "trials.csv",
    "by_L": "by_L.csv",
    "by_S": "by_S.csv",
    "summary": "summary.csv",
}


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one algorithm on one trial's instance."""
    trial: int
    num_cells: int
    num_channels: int
    algorithm: str
    assignment: str
    matched_count: int
    s_welfare: Optional[float]
    l_welfare: Optional[float]
    total_welfare: Optional[float]
    sum_rate: Optional[float]
    harmonious: bool
    stable: bool
    iterations: Optional[int] = None
    converged: Optional[bool] = None
    wall_time: float = 0.0

    def to_row(self, with_timing: bool = False) -> Dict:
        row = {
            "trial": self.trial,
            "L": self.num_cells,
            "S": self.num_channels,
            "algorithm": self.algorithm,
            "assignment": self.assignment,
            "matched_count": self.matched_count,
            "s_welfare": self.s_welfare,
            "l_welfare": self.l_welfare,
            "total_welfare": self.total_welfare,
            "sum_rate": self.sum_rate,
            "harmonious": self.harmonious,
            "stable": self.stable,
            "iterations": self.iterations,
            "converged": self.converged,
        }
        if with_timing:
            row["wall_time"] = self.wall_time
        return row


@dataclass
class ExperimentReport:
    """Records and aggregate tables of a finished experiment."""
    digest: str
    records: List[TrialRecord]
    trials: pd.DataFrame
    by_l: pd.DataFrame
    by_s: pd.DataFrame
    summary: pd.DataFrame
    paths: Dict[str, Path] = field(default_factory=dict)

    def summary_row(self, algorithm: str) -> pd.Series:
        rows = self.summary[self.summary["algorithm"] == algorithm]
        if rows.empty:
            raise KeyError(algorithm)
        return rows.iloc[0]


def trial_seed(config: ExperimentConfig, index: int) -> int:
    return derive_seed(config.seed, index)


def trial_instance(config: ExperimentConfig, index: int) -> Instance:
    """Instance of trial ``index``; a pure function of ``(config.seed, index)``."""
    seed = trial_seed(config, index)
    sizes = make_rng(seed, SIZE_STREAM)
    num_cells = int(sizes.integers(config.l_range[0], config.l_range[1] + 1))
    num_channels = int(sizes.integers(config.s_range[0], config.s_range[1] + 1))
    return generate_instance(GenConfig(
        seed=seed,
        num_cells=num_cells,
        num_channels=num_channels,
        graph=config.graph,
        profile=config.profile,
    ))


def run_trial(config: ExperimentConfig, index: int) -> List[TrialRecord]:
    """Run every selected algorithm on trial ``index``."""
    instance = trial_instance(config, index)
    seed = trial_seed(config, index)
    records = []
    for name in config.algorithms:
        settings = {}
        if name == "rpr":
            settings["iterations"] = config.resolve_rpr_iterations(instance.num_cells, instance.num_channels)
        elif name == "optimal":
            settings["cap"] = config.oracle_cap
        solver = create_solver(name, settings)
        algorithm_seed = derive_seed(seed, ALGORITHM_STREAM, ALGORITHMS.index(name))

        started = time.perf_counter()
        result = solver.solve(instance, algorithm_seed)
        elapsed = time.perf_counter() - started

        report = welfare_report(instance, result.matching)
        records.append(TrialRecord(
            trial=index,
            num_cells=instance.num_cells,
            num_channels=instance.num_channels,
            algorithm=name,
            assignment=str(result.matching),
            matched_count=report.matched_count,
            s_welfare=report.s_welfare_norm,
            l_welfare=report.l_welfare_norm,
            total_welfare=report.total_welfare_norm,
            sum_rate=report.sum_rate,
            harmonious=is_harmonious(instance, result.matching),
            stable=is_stable(instance, result.matching),
            iterations=result.iterations,
            converged=result.converged,
            wall_time=elapsed,
        ))
    return records


def _iter_trials(config: ExperimentConfig) -> Iterator[List[TrialRecord]]:
    indices = range(config.trials)
    if config.workers == 1:
        for index in indices:
            yield run_trial(config, index)
        return
    chunksize = max(1, config.trials // (config.workers * 8))
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        yield from pool.map(run_trial, repeat(config), indices, chunksize=chunksize)


def trials_frame(records: List[TrialRecord], with_timing: bool = False) -> pd.DataFrame:
    columns = TRIAL_COLUMNS + (["wall_time"] if with_timing else [])
    frame = pd.DataFrame([r.to_row(with_timing) for r in records], columns=columns)
    for column in FLOAT_COLUMNS:
        frame[column] = frame[column].astype("float64")
    frame["iterations"] = pd.array(frame["iterations"].tolist(), dtype="Int64")
    return frame


def _aggregate(frame: pd.DataFrame, keys: List[str], algorithms: List[str]) -> pd.DataFrame:
    work = frame.copy()
    work["algorithm"] = pd.Categorical(work["algorithm"], categories=list(algorithms), ordered=True)
    work["stable"] = work["stable"].astype("float64")
    work["not_converged"] = work["converged"].map({True: 0.0, False: 1.0}).astype("float64")
    grouped = work.groupby(keys, observed=True, sort=True).agg(
        trials=("trial", "size"),
        mean_total_welfare=("total_welfare", "mean"),
        mean_s_welfare=("s_welfare", "mean"),
        mean_l_welfare=("l_welfare", "mean"),
        mean_sum_rate=("sum_rate", "mean"),
        stable_rate=("stable", "mean"),
        non_convergence_rate=("not_converged", "mean"),
    ).reset_index()
    grouped["algorithm"] = grouped["algorithm"].astype(str)
    return grouped


def aggregate_by(frame: pd.DataFrame, key: str, algorithms: List[str]) -> pd.DataFrame:
    """Per-(key, algorithm) means; ``key`` is ``L`` or ``S``."""
    grouped = _aggregate(frame, [key, "algorithm"], algorithms)
    return grouped[[key] + AGGREGATE_COLUMNS]


def summarize(frame: pd.DataFrame, algorithms: List[str], utility: bool) -> pd.DataFrame:
    """Per-algorithm means plus the ratio of each mean objective to the optimal one."""
    summary = _aggregate(frame, ["algorithm"], algorithms)
    objective = "mean_sum_rate" if utility else "mean_total_welfare"
    summary["ratio_to_optimal"] = np.nan
    optimal = summary.loc[summary["algorithm"] == "optimal", objective]
    if not optimal.empty and optimal.iloc[0] > 0:
        summary["ratio_to_optimal"] = summary[objective] / optimal.iloc[0]
    return summary[SUMMARY_COLUMNS]


def run_experiment(config: ExperimentConfig,
                   diagnostics: Optional[ExperimentDiagnostics] = None,
                   write: bool = True) -> ExperimentReport:
    """Run all trials and write the CSV files to ``config.output_path``.

    Args:
        config: Experiment configuration
        diagnostics: Progress tracker; one is created when omitted
        write: Write the CSV files

    Returns:
        ExperimentReport

    Raises:
        ConfigError: If the configuration is invalid (before any trial runs)
    """
    config.validate()
    digest = config.digest()
    diagnostics = diagnostics or ExperimentDiagnostics(config)
    diagnostics.start(config.trials)

    records: List[TrialRecord] = []
    for trial_records in _iter_trials(config):
        diagnostics.record_trial(trial_records)
        for record in trial_records:
            if record.algorithm == "rpr" and not record.stable and diagnostics.expects_stability:
                diagnostics.record_finding(record, instance_to_dict(trial_instance(config, record.trial)))
        records.extend(trial_records)

    algorithms = list(config.algorithms)
    trials = trials_frame(records, config.record_timing)
    report = ExperimentReport(
        digest=digest,
        records=records,
        trials=trials,
        by_l=aggregate_by(trials, "L", algorithms),
        by_s=aggregate_by(trials, "S", algorithms),
        summary=summarize(trials, algorithms, config.profile.is_utility),
    )

    if write:
        out = Path(config.output_path)
        frames = {"trials": report.trials, "by_L": report.by_l, "by_S": report.by_s, "summary": report.summary}
        for key, frame in frames.items():
            report.paths[key] = write_csv(frame, out / CSV_FILES[key], digest)
        logger.info(f"Wrote {len(report.paths)} CSV files to {out}")

    diagnostics.complete()
    return report
