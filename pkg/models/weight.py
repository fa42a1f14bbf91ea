"""
Vacuum Weight Model

The weight omega0 that multiplies the velocity in the weighted unknown
X = omega0 v, with the gamma-dependent coefficients of the pressure term.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict

import numpy as np


@dataclass
class VacuumWeight:
    """
    Weight field and operator coefficients of the regularized problem.

    With a = gamma / (gamma - 1) the pressure contribution to the momentum
    equation is  a omega0' / eta'^gamma - gamma omega0 eta'' / eta'^(gamma+1).

    Attributes:
        gamma: Adiabatic index
        pressure_coefficient: gamma / (gamma - 1)
        curvature_coefficient: gamma
        coupling_coefficient: gamma^2 / (gamma - 1), used by u_2
        flux_exponent: gamma / (gamma - 1), so rho0^gamma = omega0^flux_exponent
        formulation: 'omega' (general gamma) or 'density' (gamma = 2 only)
        omega_fn: Callable (x, order) returning omega0 derivatives
        integrable: Whether omega0^(1/(gamma-1) - 1) is square integrable
    """

    gamma: float
    pressure_coefficient: float
    curvature_coefficient: float
    coupling_coefficient: float
    flux_exponent: float
    formulation: str = 'omega'
    omega_fn: Callable[[np.ndarray, int], np.ndarray] = field(default=None, repr=False, compare=False)
    integrable: bool = True

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th derivative of omega0."""
        return self.omega_fn(np.asarray(x, dtype=float), order)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'gamma': self.gamma,
            'formulation': self.formulation,
            'pressure_coefficient': self.pressure_coefficient,
            'curvature_coefficient': self.curvature_coefficient,
            'coupling_coefficient': self.coupling_coefficient,
            'flux_exponent': self.flux_exponent,
            'integrable': self.integrable,
        }
