"""
Picard iteration of the nonlinear kappa-problem: velocity trajectories,
flow-map updates, convergence and contraction diagnostics.
"""

from .trajectory import Trajectory
from .geometry import integrate_geometry, check_geometry, update_geometry
from .picard import (
    IterationState,
    FixedPointSolver,
    residual_norm,
    contraction_rate,
    iterate,
    picard_step,
)

__all__ = [
    'Trajectory',
    'integrate_geometry',
    'check_geometry',
    'update_geometry',
    'IterationState',
    'FixedPointSolver',
    'residual_norm',
    'contraction_rate',
    'iterate',
    'picard_step',
]
