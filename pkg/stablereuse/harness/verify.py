"""Check a matching file against an instance file."""

from __future__ import annotations

import logging
from pathlib import Path

from ..core.errors import ValidationError
from ..core.predicates import MatchingReport, check_matching
from ..generators.serialization import load_instance, load_matching

logger = logging.getLogger(__name__)


def verify(instance_path, matching_path) -> MatchingReport:
    """Admissibility, harmony and stability verdicts for the two files.

    Raises:
        InstanceParseError: If either file is malformed
        ValidationError: If the matching does not assign every cell
    """
    instance = load_instance(Path(instance_path))
    matching = load_matching(Path(matching_path))
    if len(matching) != instance.num_cells:
        raise ValidationError(
            f"matching is not total: {len(matching)} entries for {instance.num_cells} cells"
        )
    report = check_matching(instance, matching)
    logger.debug(f"verify {matching_path}: {report.describe()}")
    return report


def format_report(report: MatchingReport) -> str:
    """Human-readable verdict lines with the first witness of each failure."""
    lines = [f"admissible: {'yes' if report.admissible else 'no'}"]
    if not report.admissible:
        lines.append(f"  reason: {report.admissibility_problem}")
        return "\n".join(lines)
    lines.append(f"harmonious: {'yes' if report.harmonious else 'no'}")
    if report.harmony_violation:
        a, b, s = report.harmony_violation
        lines.append(f"  witness: cells {a} and {b} share channel {s}")
        return "\n".join(lines)
    lines.append(f"stable: {'yes' if report.stable else 'no'}")
    if report.blocking_pair:
        cell, channel = report.blocking_pair
        lines.append(f"  witness: blocking pair (cell {cell}, channel {channel})")
    return "\n".join(lines)
