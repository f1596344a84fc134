"""Utility modules for stablereuse."""

from .solver_factory import create_solver, list_available_solvers, solve
from .cli import parse_arguments, setup_cli_logging

__all__ = [
    'create_solver',
    'list_available_solvers',
    'solve',
    'parse_arguments',
    'setup_cli_logging'
]
