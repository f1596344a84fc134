"""Unit tests for the distributed DSSAR simulation."""

import pytest
from pathlib import Path

# Add parent directory to path
import sys
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from stablereuse.algorithms import dssar, dssar_assignment_order
from stablereuse.core.errors import InvalidArgumentError, PreconditionError
from stablereuse.core.model import Matching
from stablereuse.core.predicates import is_harmonious
from stablereuse.simulation.csma import (
    CARRIER_SENSE, CONTROL_MESSAGE, CONTROL_MESSAGES, SENSE_BUSY, TRANSMIT,
    TraceEvent, backoff, resolve_mode, simulate_csma,
)


class TestBackoff:
    def test_inverse_utility(self):
        assert backoff(1) == 1.0
        assert backoff(2) == 0.5

    def test_strictly_decreasing(self):
        assert backoff(3.0) < backoff(2.9)

    @pytest.mark.parametrize("utility", [0, -1.5])
    def test_non_positive_rejected(self, utility):
        with pytest.raises(InvalidArgumentError):
            backoff(utility)


class TestModes:
    def test_aliases(self):
        assert resolve_mode("csma") == CARRIER_SENSE
        assert resolve_mode("messages") == CONTROL_MESSAGES
        assert resolve_mode(CONTROL_MESSAGES) == CONTROL_MESSAGES

    def test_unknown_mode(self, edge_utility_instance):
        with pytest.raises(InvalidArgumentError, match="Unknown simulation mode"):
            simulate_csma(edge_utility_instance, "aloha")

    def test_negative_delay(self, edge_utility_instance):
        with pytest.raises(InvalidArgumentError):
            simulate_csma(edge_utility_instance, "messages", delay=-1)

    def test_ranking_profile_rejected(self, five_cell):
        with pytest.raises(InvalidArgumentError):
            simulate_csma(five_cell)


class TestCarrierSense:
    def test_single_cell(self, make_utility):
        trace = simulate_csma(make_utility([[4, 0]]))
        assert trace.events == (TraceEvent(0.25, TRANSMIT, 1, 1),)
        assert trace.matching == Matching((1,))

    def test_neighbour_senses_busy_channel(self, edge_utility_instance):
        trace = simulate_csma(edge_utility_instance)
        assert trace.events == (
            TraceEvent(0.2, TRANSMIT, 1, 1),
            TraceEvent(0.2, SENSE_BUSY, 2, 1),
        )
        assert trace.matching == Matching((1, 2))
        assert trace.to_rows()[0] == (0.2, TRANSMIT, 1, 1)

    def test_ties_rejected(self, make_utility):
        with pytest.raises(PreconditionError):
            simulate_csma(make_utility([[2, 2, 0], [2, 1, 0]], [(1, 2)]))

    @pytest.mark.parametrize("seed", range(30))
    def test_reproduces_centralised_run(self, make_instance, seed):
        instance = make_instance(seed, 4 + seed % 12, 2 + seed % 5, profile="utility_shannon")
        trace = simulate_csma(instance)
        assert trace.matching == dssar(instance)
        assert trace.transmit_order() == dssar_assignment_order(instance)


class TestControlMessages:
    def test_zero_delay_message(self, edge_utility_instance):
        trace = simulate_csma(edge_utility_instance, "messages")
        assert trace.mode == CONTROL_MESSAGES
        assert trace.events[1] == TraceEvent(0.2, CONTROL_MESSAGE, 2, 1)
        assert trace.matching == Matching((1, 2))

    def test_ties_follow_cell_then_channel(self, make_utility):
        instance = make_utility([[2, 2, 0], [2, 1, 0]], [(1, 2)])
        trace = simulate_csma(instance, "messages")
        assert trace.transmit_order() == dssar_assignment_order(instance) == [(1, 1), (2, 2)]
        assert trace.matching == Matching((1, 2))

    @pytest.mark.parametrize("seed", range(20))
    def test_zero_delay_matches_carrier_sense(self, make_instance, seed):
        instance = make_instance(seed, 10, 4, profile="utility_shannon")
        assert (simulate_csma(instance, "messages").transmit_order()
                == simulate_csma(instance, "csma").transmit_order())

    def test_late_message_allows_conflict(self, edge_utility_instance):
        trace = simulate_csma(edge_utility_instance, "messages", delay=1.0)
        # cell 2's timer expires at 1/3, before the message sent at 0.2 arrives
        assert trace.transmit_order() == [(1, 1), (2, 1)]
        assert trace.matching == Matching((1, 1))
        assert not is_harmonious(edge_utility_instance, trace.matching)

    def test_short_delay_still_harmonious(self, edge_utility_instance):
        trace = simulate_csma(edge_utility_instance, "messages", delay=0.1)
        assert trace.matching == Matching((1, 2))
        assert trace.events[-1].time == pytest.approx(0.3)
