"""
Report Models

Result records produced by the solvers and drivers. Every record has a
to_dict() used by the JSON reporter.
"""

from dataclasses import dataclass, field
from typing import Optional, List, Dict, Any

import numpy as np


@dataclass
class SolverDiagnostics:
    """
    Per-solve statistics of the implicit Galerkin integrator.

    Attributes:
        steps: Number of accepted time steps
        refinements: Iterative-refinement sweeps used per step
        residuals: Final relative residual per step
        rejections: Steps that had to be split into substeps
    """

    steps: int = 0
    refinements: List[int] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)
    rejections: int = 0

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'steps': self.steps,
            'total_refinements': int(sum(self.refinements)),
            'max_residual': self.max_residual,
            'rejections': self.rejections,
        }


@dataclass
class ContractionStats:
    """
    Statistics of successive residual ratios r_{n+1} / r_n.

    Attributes:
        ratios: Successive ratios
        max_ratio: Largest ratio
        geometric_mean: Geometric mean of the ratios
        contractive: True when every ratio is below 1
    """

    ratios: List[float]
    max_ratio: float
    geometric_mean: float
    contractive: bool

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class ConvergenceReport:
    """
    Outcome of a Picard iteration.

    Attributes:
        converged: True when the residual fell below tol
        iterations: Number of Picard steps taken
        residuals: Residual history r_n
        ratios: Successive residual ratios
        tol: Residual tolerance
        T: Horizon
        wall_time: Seconds spent iterating
        inner: Solver diagnostics per iteration
        within_bound: Result of the C_T(M) membership check, None if unchecked
        message: Human-readable status
    """

    converged: bool
    iterations: int
    residuals: List[float]
    ratios: List[float]
    tol: float
    T: float
    wall_time: float = 0.0
    inner: List[SolverDiagnostics] = field(default_factory=list)
    within_bound: Optional[bool] = None
    message: str = ''

    @property
    def max_ratio(self) -> Optional[float]:
        return max(self.ratios) if self.ratios else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'converged': self.converged,
            'iterations': self.iterations,
            'residuals': list(self.residuals),
            'ratios': list(self.ratios),
            'max_ratio': self.max_ratio,
            'tol': self.tol,
            'T': self.T,
            'wall_time': self.wall_time,
            'inner': [d.to_dict() for d in self.inner],
            'within_bound': self.within_bound,
            'message': self.message,
        }


@dataclass
class DampingReport:
    """
    Exact solution of f + kappa f_t = g on a time grid.

    Attributes:
        times: Time grid
        f: Solution values (time first)
        sup_f: sup |f|
        data_bound: max(|f0|, sup |g|)
        ratio: sup_f / data_bound (0 when both vanish)
        bound_ok: ratio <= 1 + tolerance
    """

    times: np.ndarray
    f: np.ndarray
    sup_f: float
    data_bound: float
    ratio: float
    bound_ok: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            'sup_f': self.sup_f,
            'data_bound': self.data_bound,
            'ratio': self.ratio,
            'bound_ok': self.bound_ok,
        }


@dataclass
class SweepEntry:
    """One kappa value of a sweep."""

    kappa: float
    status: str
    exit_code: int = 0
    T_valid: Optional[float] = None
    iterations: Optional[int] = None
    max_ratio: Optional[float] = None
    E0: Optional[float] = None
    E_max: Optional[float] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class SweepReport:
    """
    Aggregate of a kappa sweep.

    Attributes:
        entries: Per-kappa results in plan order
        common_horizon: T* = min T_valid over successful runs
        distances: ||v_i - v_{i+1}|| on [0, T*] between consecutive successes
        t_valid_spread: max T_valid / min T_valid
        kappa_independent: spread below 2
        distances_decreasing: Cauchy proxy along the sweep
        outcomes: Per-entry worker outputs (not serialized)
    """

    entries: List[SweepEntry]
    common_horizon: Optional[float] = None
    distances: List[float] = field(default_factory=list)
    t_valid_spread: Optional[float] = None
    kappa_independent: Optional[bool] = None
    distances_decreasing: Optional[bool] = None
    outcomes: List[Any] = field(default_factory=list, repr=False)

    @property
    def failures(self) -> List[SweepEntry]:
        return [e for e in self.entries if e.status != 'ok']

    def to_dict(self) -> Dict[str, Any]:
        return {
            'entries': [e.to_dict() for e in self.entries],
            'common_horizon': self.common_horizon,
            'distances': list(self.distances),
            't_valid_spread': self.t_valid_spread,
            'kappa_independent': self.kappa_independent,
            'distances_decreasing': self.distances_decreasing,
        }


@dataclass
class ConvergenceRow:
    """One rung of a discretization ladder."""

    n_modes: int
    dt: float
    error: float
    ratio: Optional[float] = None
    observed_order: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class ConvergenceTable:
    """Errors against a manufactured solution over a refinement ladder."""

    rows: List[ConvergenceRow]
    kappa: float
    T: float

    def to_dict(self) -> Dict[str, Any]:
        return {'kappa': self.kappa, 'T': self.T, 'rows': [r.to_dict() for r in self.rows]}


@dataclass
class HardyReport:
    """
    Measured constant of the Hardy inequality ||u/d||_{H^{s-1}} <= C ||u||_{H^s}.

    Attributes:
        s: Sobolev order of the right-hand side
        quotient_norm: ||u/d||_{H^{s-1}}
        field_norm: ||u||_{H^s}
        ratio: quotient_norm / field_norm (0 for the zero field)
    """

    s: int
    quotient_norm: float
    field_norm: float
    ratio: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)
