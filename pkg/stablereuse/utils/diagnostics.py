"""Progress tracking and findings for experiment runs."""

import json
import logging
from dataclasses import asdict, dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

# graph families on which RP&R is expected to reach stability
GUARANTEED_FAMILIES = ("empty", "complete", "disjoint_complete", "random_forest")


@dataclass
class AlgorithmStats:
    """Running tallies for one algorithm."""
    runs: int = 0
    stable: int = 0
    harmonious: int = 0
    not_converged: int = 0

    def stable_rate(self) -> float:
        if self.runs == 0:
            return 0.0
        return self.stable / self.runs


@dataclass
class ExperimentStats:
    """Statistics for an experiment run."""
    trials_planned: int = 0
    trials_completed: int = 0
    findings: int = 0
    by_algorithm: Dict[str, AlgorithmStats] = field(default_factory=dict)

    def get_completion_percentage(self) -> float:
        if self.trials_planned == 0:
            return 100.0
        return (self.trials_completed / self.trials_planned) * 100

    def get_session_summary(self) -> Dict[str, Any]:
        return {
            'trials_planned': self.trials_planned,
            'trials_completed': self.trials_completed,
            'findings': self.findings,
            'completion_percentage': f"{self.get_completion_percentage():.1f}%",
            'stable_rate': {name: round(s.stable_rate(), 6) for name, s in self.by_algorithm.items()},
        }


@dataclass
class Finding:
    """An RP&R run that ended unstable on a family where stability is expected."""
    trial: int
    graph_kind: str
    num_cells: int
    num_channels: int
    iterations: Optional[int]
    converged: Optional[bool]
    instance: Dict[str, Any]


class ExperimentDiagnostics:
    """Progress logging, per-algorithm tallies and findings snapshots."""

    def __init__(self, config, output_dir: Optional[Path] = None):
        """Initialize diagnostics.

        Args:
            config: ExperimentConfig of the run
            output_dir: Directory for ``findings.json``; defaults to ``config.output_path``
        """
        self.config = config
        self.stats = ExperimentStats()
        self.findings: List[Finding] = []
        self.start_time = None
        self.end_time = None
        self.output_dir = Path(output_dir) if output_dir else Path(config.output_path)
        self.findings_file = self.output_dir / "findings.json"
        self.progress_every = max(int(getattr(config, 'progress_every', 0) or 0), 0)

    @property
    def expects_stability(self) -> bool:
        return self.config.graph.kind in GUARANTEED_FAMILIES

    def start(self, trials: int) -> None:
        self.start_time = datetime.now()
        self.stats.trials_planned = trials

        logger.info("=" * 60)
        logger.info("EXPERIMENT STARTED")
        logger.info("-" * 60)
        logger.info(f"Trials: {trials}")
        logger.info(f"L range: {list(self.config.l_range)}, S range: {list(self.config.s_range)}")
        logger.info(f"Graph: {self.config.graph.kind}, profile: {self.config.profile.kind}")
        logger.info(f"Algorithms: {', '.join(self.config.algorithms)}")
        logger.info(f"Seed: {self.config.seed}, workers: {self.config.workers}")
        logger.info(f"Config digest: {self.config.digest()}")
        logger.info("=" * 60)

    def record_trial(self, records) -> None:
        """Tally the records of one finished trial."""
        self.stats.trials_completed += 1
        for record in records:
            tally = self.stats.by_algorithm.setdefault(record.algorithm, AlgorithmStats())
            tally.runs += 1
            tally.stable += int(record.stable)
            tally.harmonious += int(record.harmonious)
            if record.converged is False:
                tally.not_converged += 1
            if not record.harmonious:
                logger.error(f"Trial {record.trial}: {record.algorithm} produced a non-harmonious matching")

        if self.progress_every and self.stats.trials_completed % self.progress_every == 0:
            self._log_progress()

    def record_finding(self, record, instance_document: Dict[str, Any]) -> None:
        """Log an unexpected RP&R failure with its full instance and snapshot it."""
        finding = Finding(
            trial=record.trial,
            graph_kind=self.config.graph.kind,
            num_cells=record.num_cells,
            num_channels=record.num_channels,
            iterations=record.iterations,
            converged=record.converged,
            instance=instance_document,
        )
        self.findings.append(finding)
        self.stats.findings += 1
        logger.warning(
            f"FINDING: rpr ended unstable on a {finding.graph_kind} graph "
            f"(trial {finding.trial}, L={finding.num_cells}, S={finding.num_channels}, "
            f"passes={finding.iterations}, converged={finding.converged})"
        )
        logger.warning(f"Instance: {json.dumps(instance_document, sort_keys=True)}")
        self._save_findings()

    def complete(self) -> None:
        self.end_time = datetime.now()
        self._generate_final_report()

    def _log_progress(self) -> None:
        logger.info(f"Progress: {self.stats.get_completion_percentage():.1f}% "
                    f"({self.stats.trials_completed}/{self.stats.trials_planned} trials)")

    def _generate_final_report(self) -> None:
        if not self.start_time or not self.end_time:
            return

        logger.info("=" * 60)
        logger.info("EXPERIMENT COMPLETE")
        logger.info("=" * 60)
        logger.info(f"  Trials completed:   {self.stats.trials_completed:,}")
        logger.info(f"  Duration:           {self.end_time - self.start_time}")
        for name, tally in self.stats.by_algorithm.items():
            line = f"  {name:16} stable {tally.stable:,}/{tally.runs:,}"
            if tally.not_converged:
                line += f", not converged {tally.not_converged:,}"
            logger.info(line)
        if self.findings:
            logger.warning(f"  Findings:           {len(self.findings)} (see {self.findings_file})")
        logger.info("=" * 60)

    def _save_findings(self) -> None:
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            snapshot = {
                'timestamp': datetime.now().isoformat(),
                'config_digest': self.config.digest(),
                'stats': self.stats.get_session_summary(),
                'findings': [asdict(f) for f in self.findings],
            }
            with open(self.findings_file, 'w') as f:
                json.dump(snapshot, f, indent=2)
        except OSError as e:
            logger.error(f"Failed to save findings snapshot: {e}")
