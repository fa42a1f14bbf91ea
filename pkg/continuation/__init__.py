"""
Drivers above a single Picard solve: general-gamma weights, the run
pipeline, kappa sweeps and the manufactured-solution convergence harness.
"""

from .gamma import gamma_transform, direct_weight, boundary_exponents, is_integrable
from .pipeline import Simulation, RunResult, run_simulation, validity_horizon
from .sweep import SweepOutcome, kappa_sweep, run_entry, aggregate, trajectory_distance
from .manufactured import ManufacturedSolution, DEFAULT_SOLUTION
from .convergence import convergence_study, observed_order, TEMPORAL_LADDER, SPATIAL_LADDER

__all__ = [
    'gamma_transform',
    'direct_weight',
    'boundary_exponents',
    'is_integrable',
    'Simulation',
    'RunResult',
    'run_simulation',
    'validity_horizon',
    'SweepOutcome',
    'kappa_sweep',
    'run_entry',
    'aggregate',
    'trajectory_distance',
    'ManufacturedSolution',
    'DEFAULT_SOLUTION',
    'convergence_study',
    'observed_order',
    'TEMPORAL_LADDER',
    'SPATIAL_LADDER',
]
