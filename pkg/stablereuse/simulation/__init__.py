"""Distributed-execution simulation."""

from .csma import BackoffEvent, SimTrace, TraceEvent, backoff, simulate_csma

__all__ = [
    'BackoffEvent',
    'SimTrace',
    'TraceEvent',
    'backoff',
    'simulate_csma',
]
