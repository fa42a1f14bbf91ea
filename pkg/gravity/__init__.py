"""
Self-gravity: the closed-form Lagrangian force and its identities.
"""

from .force import CumulativeMass, compute_force, check_poisson_consistency, momentum_neutrality
from .differentiation import differentiation_matrix, panel_derivative

__all__ = [
    'CumulativeMass',
    'compute_force',
    'check_poisson_consistency',
    'momentum_neutrality',
    'differentiation_matrix',
    'panel_derivative',
]
