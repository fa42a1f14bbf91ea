"""
Domain models for the physical-vacuum Euler-Poisson simulator.

Value types shared by the solver packages: initial data, force, geometry,
energy records, reports, configuration and the error hierarchy.
"""

__version__ = "0.1.0"

from .errors import (
    VacuumSimError,
    ParameterError,
    ConfigError,
    ProfileValidationError,
    GammaAdmissibilityError,
    ContractError,
    HardyContractError,
    EmbeddingContractError,
    UnsupportedOrderError,
    InsufficientHistoryError,
    FrozenGeometryError,
    SolverError,
    StepRejectedError,
    FixedPointDivergenceError,
)
from .profile import DensityProfile, VelocityProfile, VacuumReport
from .force import ForceField
from .geometry import FrozenGeometry, LagrangianState
from .weight import VacuumWeight
from .energy import EnergySnapshot, InvariantReport, BoundVerdict, ENERGY_TERM_LABELS
from .reports import (
    SolverDiagnostics,
    ContractionStats,
    ConvergenceReport,
    DampingReport,
    SweepEntry,
    SweepReport,
    ConvergenceRow,
    ConvergenceTable,
    HardyReport,
)
from .run_config import (
    RunConfig,
    FixedPointConfig,
    SweepPlan,
    ConfigFinding,
    MAX_COMPATIBILITY_ORDER,
)
from .run_record import RunRecord

__all__ = [
    '__version__',
    'VacuumSimError',
    'ParameterError',
    'ConfigError',
    'ProfileValidationError',
    'GammaAdmissibilityError',
    'ContractError',
    'HardyContractError',
    'EmbeddingContractError',
    'UnsupportedOrderError',
    'InsufficientHistoryError',
    'FrozenGeometryError',
    'SolverError',
    'StepRejectedError',
    'FixedPointDivergenceError',
    'DensityProfile',
    'VelocityProfile',
    'VacuumReport',
    'ForceField',
    'FrozenGeometry',
    'LagrangianState',
    'VacuumWeight',
    'EnergySnapshot',
    'InvariantReport',
    'BoundVerdict',
    'ENERGY_TERM_LABELS',
    'SolverDiagnostics',
    'ContractionStats',
    'ConvergenceReport',
    'DampingReport',
    'SweepEntry',
    'SweepReport',
    'ConvergenceRow',
    'ConvergenceTable',
    'HardyReport',
    'RunConfig',
    'FixedPointConfig',
    'SweepPlan',
    'ConfigFinding',
    'MAX_COMPATIBILITY_ORDER',
    'RunRecord',
]
