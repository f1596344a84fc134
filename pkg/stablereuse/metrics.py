"""Welfare and rate measures.

Ranking instances are scored by two raw welfare sums:

* channel-side welfare: a cell matched to a channel that ranks it ``r``
  adds ``L - r + 1``;
* cell-side welfare: a cell matched to the channel it ranks ``r`` adds
  ``S - r``, so the top real channel adds ``S - 1``.

Virtual matches add nothing. Raw values are divided by their upper bounds
(``L * L`` and ``L * (S - 1)``) and the total welfare is the mean of the
two normalised values. Utility instances are scored by their sum rate.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .core.model import Instance, Matching, RankingProfile, UtilityProfile, check_profile_kind


def _matched_rows(instance: Instance, matching: Matching) -> Tuple[np.ndarray, np.ndarray]:
    channels = np.asarray(matching.assignment, dtype=np.int64)
    real = channels != instance.virtual
    return np.flatnonzero(real), channels[real] - 1


def s_welfare(instance: Instance, matching: Matching) -> float:
    check_profile_kind(instance, RankingProfile, "s_welfare")
    rows, cols = _matched_rows(instance, matching)
    ranks = instance.profile.channel_ranks[rows, cols]
    return float(np.sum(instance.num_cells - ranks + 1))


def l_welfare(instance: Instance, matching: Matching) -> float:
    check_profile_kind(instance, RankingProfile, "l_welfare")
    rows, cols = _matched_rows(instance, matching)
    ranks = instance.profile.cell_ranks[rows, cols]
    return float(np.sum(instance.num_channels - ranks))


def normalize(instance: Instance, s_raw: float, l_raw: float) -> Tuple[float, float, float]:
    """Normalised (channel-side, cell-side, total) welfare in ``[0, 1]``."""
    num_cells, num_channels = instance.num_cells, instance.num_channels
    s_norm = min(max(s_raw / (num_cells * num_cells), 0.0), 1.0)
    l_norm = min(max(l_raw / (num_cells * (num_channels - 1)), 0.0), 1.0)
    return s_norm, l_norm, (s_norm + l_norm) / 2


def sum_rate(instance: Instance, matching: Matching) -> float:
    check_profile_kind(instance, UtilityProfile, "sum_rate")
    utilities = instance.profile.utilities
    return math.fsum(float(utilities[cell - 1, channel - 1])
                     for cell, channel in enumerate(matching.assignment, start=1))


def total_welfare(instance: Instance, matching: Matching) -> float:
    check_profile_kind(instance, RankingProfile, "total_welfare")
    return normalize(instance, s_welfare(instance, matching), l_welfare(instance, matching))[2]


def objective(instance: Instance, matching: Matching) -> float:
    """Scalar to maximise: total normalised welfare or sum rate."""
    if instance.is_utility:
        return sum_rate(instance, matching)
    return total_welfare(instance, matching)


def objective_key(instance: Instance, matching: Matching):
    """Exact ordering key for ``objective``.

    For rankings this is the integer ``s_raw * (S - 1) + l_raw * L``, a
    positive multiple of the total welfare, so equal welfare compares equal.
    """
    if instance.is_utility:
        return sum_rate(instance, matching)
    s_raw = int(s_welfare(instance, matching))
    l_raw = int(l_welfare(instance, matching))
    return s_raw * (instance.num_channels - 1) + l_raw * instance.num_cells


@dataclass(frozen=True)
class WelfareReport:
    matched_count: int
    s_welfare_raw: Optional[float] = None
    l_welfare_raw: Optional[float] = None
    s_welfare_norm: Optional[float] = None
    l_welfare_norm: Optional[float] = None
    total_welfare_norm: Optional[float] = None
    sum_rate: Optional[float] = None

    def to_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


def welfare_report(instance: Instance, matching: Matching) -> WelfareReport:
    """All measures that apply to the instance's preference model."""
    matched = matching.matched_count(instance.virtual)
    if instance.is_utility:
        return WelfareReport(matched_count=matched, sum_rate=sum_rate(instance, matching))
    s_raw = s_welfare(instance, matching)
    l_raw = l_welfare(instance, matching)
    s_norm, l_norm, total = normalize(instance, s_raw, l_raw)
    return WelfareReport(
        matched_count=matched,
        s_welfare_raw=s_raw,
        l_welfare_raw=l_raw,
        s_welfare_norm=s_norm,
        l_welfare_norm=l_norm,
        total_welfare_norm=total,
    )
