"""
Analyzers for simulated trajectories: higher-order energy, energy bound and
physical invariants.
"""

from .energy_analyzer import (
    EnergyAnalyzer,
    time_derivatives,
    required_levels,
    eval_energy,
    check_bound,
    momentum,
    boundary_motion,
    invariants,
    invariant_history,
)

__all__ = [
    'EnergyAnalyzer',
    'time_derivatives',
    'required_levels',
    'eval_energy',
    'check_bound',
    'momentum',
    'boundary_motion',
    'invariants',
    'invariant_history',
]
