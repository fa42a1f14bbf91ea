"""
Profile Models

Initial data of the free-boundary problem: the density profile with its
vacuum weight, the initial velocity, and the vacuum validation report.
"""

from dataclasses import dataclass, field
from typing import Optional, List, Dict, Any, Tuple

import numpy as np


@dataclass
class DensityProfile:
    """
    Initial density rho0 on [0, 1] together with the adiabatic index.

    The physical-vacuum quantity is the weight omega0 = rho0^(gamma-1); the
    sound speed squared is gamma * omega0. Slopes stored on the profile are
    the one-sided slopes of omega0 (equal to rho0' when gamma = 2).

    Attributes:
        gamma: Adiabatic index, 1 < gamma < 3
        x: Sample nodes, strictly increasing from 0 to 1
        rho0: Density values at the sample nodes
        left_slope: omega0'(0+)
        right_slope: omega0'(1-)
        kind: Builder kind ('parabolic', 'sine', 'polytropic', 'expression',
            'tabulated', 'mollified')
        closed_form: Symbolic density expression for built-in profiles
        params: Builder parameters, kept for manifests
        evaluator: Object providing density(x, order) and omega(x, order)

    Example:
        >>> p = make_profile('parabolic', {'gamma': 2.0})
        >>> p.density(np.array([0.5]))
        array([0.25])
    """

    gamma: float
    x: np.ndarray
    rho0: np.ndarray
    left_slope: float
    right_slope: float
    kind: str = 'tabulated'
    closed_form: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    evaluator: Any = field(default=None, repr=False, compare=False)

    @property
    def samples(self) -> List[Tuple[float, float]]:
        """Sample pairs (x, rho0(x))."""
        return list(zip(self.x.tolist(), self.rho0.tolist()))

    def density(self, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th derivative of rho0 at x."""
        return self.evaluator.density(np.asarray(x, dtype=float), order)

    def omega(self, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th derivative of the vacuum weight at x."""
        return self.evaluator.omega(np.asarray(x, dtype=float), order)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for manifests."""
        return {
            'kind': self.kind,
            'gamma': self.gamma,
            'closed_form': self.closed_form,
            'params': {k: v for k, v in self.params.items() if k not in ('x', 'rho0')},
            'n_samples': int(len(self.x)),
            'left_slope': self.left_slope,
            'right_slope': self.right_slope,
        }

    def __repr__(self) -> str:
        return (f"DensityProfile(kind='{self.kind}', gamma={self.gamma}, "
                f"samples={len(self.x)}, slopes=({self.left_slope:.4g}, {self.right_slope:.4g}))")


@dataclass
class VelocityProfile:
    """
    Initial velocity u0 on [0, 1]. No boundary condition is imposed.

    Attributes:
        x: Sample nodes
        u0: Velocity values at the nodes
        smoothness: 'constant', 'expression', 'tabulated' or 'mollified'
        params: Builder parameters
        evaluator: Object providing evaluate(x, order)
    """

    x: np.ndarray
    u0: np.ndarray
    smoothness: str = 'tabulated'
    params: Dict[str, Any] = field(default_factory=dict)
    evaluator: Any = field(default=None, repr=False, compare=False)

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.x.tolist(), self.u0.tolist()))

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th derivative of u0 at x."""
        return self.evaluator.evaluate(np.asarray(x, dtype=float), order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'smoothness': self.smoothness,
            'params': dict(self.params),
            'n_samples': int(len(self.x)),
        }


@dataclass
class VacuumReport:
    """
    Result of the physical-vacuum check.

    Attributes:
        passed: True when slopes are finite and nonzero and the witness certifies
        c2_slope_left: Slope of c^2 = gamma * omega0 at x = 0
        c2_slope_right: Slope of c^2 at x = 1
        alpha: Boundary-layer width of the witness
        C: Lower bound of |omega0'| inside the boundary layer
        C_alpha: Lower bound of omega0 away from the boundary layer
        failures: Human-readable reasons for failure
    """

    passed: bool
    c2_slope_left: float
    c2_slope_right: float
    alpha: float
    C: float
    C_alpha: float
    failures: List[str] = field(default_factory=list)

    @property
    def witness(self) -> Tuple[float, float, float]:
        return (self.alpha, self.C, self.C_alpha)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'passed': self.passed,
            'c2_slope_left': self.c2_slope_left,
            'c2_slope_right': self.c2_slope_right,
            'witness': {'alpha': self.alpha, 'C': self.C, 'C_alpha': self.C_alpha},
            'failures': list(self.failures),
        }
