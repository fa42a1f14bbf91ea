"""
The degenerate linear parabolic problem for X = omega0 v with frozen
geometry: source assembly, Galerkin integration, velocity recovery and the
damping equation.
"""

from .problem import LinearProblem, assemble_G, check_frozen_bound, pressure_term
from .galerkin import (
    XSolution,
    LinearizedSolver,
    mass_matrix,
    reaction_matrix,
    time_grid,
    initial_X,
    solve_X,
    weighted_gap,
    history_table,
)
from .recovery import VelocityRecovery, recover_field, recover_v, endpoint_limits
from .damping import damping_solve

__all__ = [
    'LinearProblem',
    'assemble_G',
    'check_frozen_bound',
    'pressure_term',
    'XSolution',
    'LinearizedSolver',
    'mass_matrix',
    'reaction_matrix',
    'time_grid',
    'initial_X',
    'solve_X',
    'weighted_gap',
    'history_table',
    'VelocityRecovery',
    'recover_field',
    'recover_v',
    'endpoint_limits',
    'damping_solve',
]
