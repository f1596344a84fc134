"""Discrete-event simulation of distributed DSSAR.

Every (cell, real channel) pair runs a backoff timer whose length
decreases with the pair's utility. The first timer to expire wins: its
cell transmits on the channel and takes it. The cell drops its other
timers, and its neighbours drop their timers on the same channel. They
learn of the transmission in one of two ways:

* ``carrier_sense``: neighbours sense the busy channel immediately;
* ``control_messages``: the winner sends each neighbour a control message
  that arrives after ``delay`` (zero by default).

Sensing is ideal and there are no collisions. The earliest timer always
belongs to the largest remaining utility, so with zero delay the run
reproduces centralised DSSAR.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
import simpy

from ..core.errors import InvalidArgumentError, PreconditionError
from ..core.model import Instance, Matching, UtilityProfile, check_profile_kind

logger = logging.getLogger(__name__)

CARRIER_SENSE = "carrier_sense"
CONTROL_MESSAGES = "control_messages"
MODES = (CARRIER_SENSE, CONTROL_MESSAGES)
MODE_ALIASES = {"csma": CARRIER_SENSE, "messages": CONTROL_MESSAGES}

TRANSMIT = "transmit"
SENSE_BUSY = "sense-busy"
CONTROL_MESSAGE = "control-message"


def backoff(utility: float) -> float:
    """Backoff time ``1 / u``: positive and strictly decreasing in ``u``."""
    if not utility > 0:
        raise InvalidArgumentError(f"backoff needs a positive utility, got {utility}")
    return 1.0 / float(utility)


@dataclass(frozen=True)
class BackoffEvent:
    time: float
    cell: int
    channel: int


@dataclass(frozen=True)
class TraceEvent:
    time: float
    kind: str
    cell: int
    channel: int


@dataclass(frozen=True)
class SimTrace:
    """Ordered simulation events and the final matching."""
    mode: str
    events: Tuple[TraceEvent, ...]
    matching: Matching
    scheduled: Tuple[BackoffEvent, ...] = ()

    def transmit_order(self) -> List[Tuple[int, int]]:
        return [(e.cell, e.channel) for e in self.events if e.kind == TRANSMIT]

    def to_rows(self) -> List[Tuple[float, str, int, int]]:
        return [(e.time, e.kind, e.cell, e.channel) for e in self.events]


def resolve_mode(mode: str) -> str:
    mode = MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        available = ', '.join(list(MODES) + list(MODE_ALIASES))
        raise InvalidArgumentError(f"Unknown simulation mode: {mode}. Available: {available}")
    return mode


class _ChannelAccess:
    """Shared state of one simulation run."""

    def __init__(self, env: simpy.Environment, instance: Instance, mode: str, delay: float):
        self.env = env
        self.instance = instance
        self.mode = mode
        self.delay = delay
        self.assignment = [instance.virtual] * instance.num_cells
        self.events: List[TraceEvent] = []
        self.timers: Dict[Tuple[int, int], simpy.Process] = {}

    def start(self, cell: int, channel: int, wait: float) -> None:
        self.timers[(cell, channel)] = self.env.process(self._timer(cell, channel, wait))

    def _cancel(self, cell: int, channel: int) -> bool:
        timer = self.timers.get((cell, channel))
        if timer is None or not timer.is_alive or timer is self.env.active_process:
            return False
        timer.interrupt()
        return True

    def _timer(self, cell: int, channel: int, wait: float):
        try:
            yield self.env.timeout(wait)
        except simpy.Interrupt:
            return
        self._transmit(cell, channel)

    def _transmit(self, cell: int, channel: int) -> None:
        now = self.env.now
        self.assignment[cell - 1] = channel
        self.events.append(TraceEvent(now, TRANSMIT, cell, channel))
        logger.debug("t=%.6g cell %d transmits on channel %d", now, cell, channel)
        for other in self.instance.real_channels:
            if other != channel:
                self._cancel(cell, other)
        neighbours = sorted(self.instance.constraints.neighbors(cell))
        if self.mode == CARRIER_SENSE:
            for neighbour in neighbours:
                if self._cancel(neighbour, channel):
                    self.events.append(TraceEvent(now, SENSE_BUSY, neighbour, channel))
        else:
            for neighbour in neighbours:
                if self.delay > 0:
                    self.env.process(self._deliver(neighbour, channel))
                else:
                    self._receive(neighbour, channel)

    def _deliver(self, neighbour: int, channel: int):
        yield self.env.timeout(self.delay)
        self._receive(neighbour, channel)

    def _receive(self, neighbour: int, channel: int) -> None:
        self.events.append(TraceEvent(self.env.now, CONTROL_MESSAGE, neighbour, channel))
        self._cancel(neighbour, channel)


def simulate_csma(instance: Instance, mode: str = CARRIER_SENSE, *, delay: float = 0.0) -> SimTrace:
    """Simulate distributed DSSAR.

    Timers start in (cell, channel) order, so timers expiring at the same
    instant fire by smallest cell, then smallest channel.

    Args:
        instance: Utility instance
        mode: ``carrier_sense`` or ``control_messages`` (``csma`` / ``messages`` accepted)
        delay: Control-message delivery delay; ignored in carrier-sense mode

    Returns:
        SimTrace with every event and the final matching

    Raises:
        InvalidArgumentError: On a ranking profile, unknown mode or negative delay
        PreconditionError: If carrier-sense mode meets tied real utilities
    """
    check_profile_kind(instance, UtilityProfile, "simulate_csma")
    mode = resolve_mode(mode)
    if delay < 0:
        raise InvalidArgumentError(f"delay must be >= 0, got {delay}")
    real = instance.profile.utilities[:, :-1]
    if mode == CARRIER_SENSE and np.unique(real).size != real.size:
        raise PreconditionError("carrier-sense mode needs pairwise distinct real-channel utilities")

    env = simpy.Environment()
    access = _ChannelAccess(env, instance, mode, float(delay))
    scheduled = []
    for cell in instance.cells:
        for channel in instance.real_channels:
            wait = backoff(real[cell - 1, channel - 1])
            scheduled.append(BackoffEvent(wait, cell, channel))
            access.start(cell, channel, wait)
    env.run()

    matching = Matching(tuple(access.assignment))
    logger.debug("%s simulation finished at t=%.6g with %d transmissions",
                 mode, env.now, sum(1 for e in access.events if e.kind == TRANSMIT))
    return SimTrace(mode=mode, events=tuple(access.events), matching=matching, scheduled=tuple(scheduled))
