"""Unit tests for welfare and rate measures."""

import pytest
from pathlib import Path

import numpy as np

# Add parent directory to path
import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from stablereuse.core.errors import InvalidArgumentError
from stablereuse.core.model import Matching
from stablereuse.metrics import (
    l_welfare, normalize, objective, objective_key, s_welfare, sum_rate, total_welfare, welfare_report,
)


class TestChannelSideWelfare:
    def test_top_ranked_cell_adds_l(self, make_ranking):
        cell_ranks = [[1, 2]] * 5
        channel_ranks = [[r, r] for r in range(1, 6)]
        instance = make_ranking(cell_ranks, channel_ranks)
        assert s_welfare(instance, Matching((1, 2, 2, 2, 2))) == 5

    def test_all_virtual(self, five_cell):
        assert s_welfare(five_cell, Matching.all_virtual(5, 3)) == 0

    def test_two_cells_on_distinct_channels(self, make_ranking):
        instance = make_ranking([[1, 2, 3], [2, 1, 3]], [[1, 2, 1], [2, 1, 2]])
        # cell 1 has rank 1 on channel 1, cell 2 rank 1 on channel 2
        assert s_welfare(instance, Matching((1, 2))) == 4
        # rank 1 and rank 2
        assert s_welfare(instance, Matching((2, 2))) == 1 + 2


class TestCellSideWelfare:
    def test_all_virtual(self, five_cell):
        assert l_welfare(five_cell, Matching.all_virtual(5, 3)) == 0

    def test_all_top_choices(self, make_ranking):
        instance = make_ranking([[1, 2, 3]] * 3, [[1, 1, 1], [2, 2, 2], [3, 3, 3]])
        assert l_welfare(instance, Matching((1, 1, 1))) == 6

    def test_second_choice_adds_one(self, make_ranking):
        instance = make_ranking([[1, 2, 3]], [[1, 1, 1]])
        assert l_welfare(instance, Matching((2,))) == 1

    def test_utility_profile_rejected(self, edge_utility_instance):
        with pytest.raises(InvalidArgumentError):
            l_welfare(edge_utility_instance, Matching((1, 2)))


class TestNormalisation:
    def test_top_choices_normalise_to_one(self, five_cell):
        tops = tuple(int(np.argmin(row[:-1])) + 1 for row in five_cell.profile.cell_ranks)
        _, l_norm, _ = normalize(five_cell, s_welfare(five_cell, Matching(tops)), l_welfare(five_cell, Matching(tops)))
        assert l_norm == 1.0

    def test_all_virtual_is_zero(self, five_cell):
        assert normalize(five_cell, 0, 0) == (0.0, 0.0, 0.0)

    def test_total_is_mean(self, make_instance):
        instance = make_instance(4, 6, 3)
        matching = Matching((1, 2, 3, 1, 2, 3))
        s_norm, l_norm, total = normalize(instance, s_welfare(instance, matching), l_welfare(instance, matching))
        assert total == pytest.approx((s_norm + l_norm) / 2)
        assert total_welfare(instance, matching) == pytest.approx(total)
        assert 0.0 <= total <= 1.0


class TestSumRate:
    def test_all_virtual(self, edge_utility_instance):
        assert sum_rate(edge_utility_instance, Matching((2, 2))) == 0

    def test_single_cell(self, make_utility):
        assert sum_rate(make_utility([[5, 0]]), Matching((1,))) == 5

    def test_ranking_profile_rejected(self, five_cell):
        with pytest.raises(InvalidArgumentError):
            sum_rate(five_cell, Matching.all_virtual(5, 3))


class TestObjective:
    def test_key_orders_like_total_welfare(self, make_instance):
        instance = make_instance(9, 5, 3, graph="empty")
        matchings = [Matching(a) for a in [(1, 1, 1, 1, 1), (2, 2, 2, 2, 2), (1, 2, 3, 1, 2), (3, 3, 3, 3, 1)]]
        by_key = sorted(matchings, key=lambda m: objective_key(instance, m))
        by_value = sorted(matchings, key=lambda m: objective(instance, m))
        assert [objective(instance, m) for m in by_key] == pytest.approx([objective(instance, m) for m in by_value])

    def test_utility_objective_is_sum_rate(self, edge_utility_instance):
        assert objective(edge_utility_instance, Matching((1, 2))) == 5


class TestWelfareReport:
    def test_ranking_report(self, five_cell):
        report = welfare_report(five_cell, Matching((1, 2, 3, 3, 3)))
        assert report.matched_count == 2
        assert report.sum_rate is None
        assert report.total_welfare_norm == pytest.approx((report.s_welfare_norm + report.l_welfare_norm) / 2)

    def test_utility_report(self, edge_utility_instance):
        report = welfare_report(edge_utility_instance, Matching((1, 2)))
        assert report.sum_rate == 5
        assert report.total_welfare_norm is None
        assert report.to_dict()["matched_count"] == 1
