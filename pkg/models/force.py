"""
Force Field Model

Time-independent Lagrangian self-gravity force F = C (M/2 - m(x)).
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional

import numpy as np


@dataclass
class ForceField:
    """
    Sampled self-gravity force with its antiderivative data.

    Attributes:
        x: Evaluation nodes (composite Gauss nodes, interior)
        F: Force values at x
        m: Cumulative mass m(x) = int_0^x rho0 at x
        total_mass: M = m(1)
        C_poisson: Constant C of the Poisson equation (default 1)
        mass_fn: Callable returning m at arbitrary points
        density_fn: Callable (x, order) returning rho0 derivatives

    Example:
        >>> force = compute_force(make_profile('parabolic'))
        >>> force.evaluate(np.array([0.0, 1.0]))
        array([ 0.08333333, -0.08333333])
    """

    x: np.ndarray
    F: np.ndarray
    m: np.ndarray
    total_mass: float
    C_poisson: float = 1.0
    mass_fn: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False, compare=False)
    density_fn: Optional[Callable[[np.ndarray, int], np.ndarray]] = field(default=None, repr=False, compare=False)

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        """
        Evaluate F or one of its derivatives at arbitrary points.

        F' = -C rho0, so derivatives of order k >= 1 come from rho0^(k-1).

        Args:
            x: Points in [0, 1]
            order: Derivative order

        Returns:
            Array shaped like x
        """
        x = np.asarray(x, dtype=float)
        if order == 0:
            return self.C_poisson * (0.5 * self.total_mass - self.mass_fn(x))
        return -self.C_poisson * self.density_fn(x, order - 1)

    def endpoint_values(self):
        """Return (F(0), F(1)) computed from the closed form M/2 and M/2 - M."""
        half = 0.5 * self.total_mass
        return self.C_poisson * half, self.C_poisson * (half - self.total_mass)

    def to_rows(self):
        """Rows for the `x,F,m` export."""
        return [(float(a), float(b), float(c)) for a, b, c in zip(self.x, self.F, self.m)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'total_mass': self.total_mass,
            'C_poisson': self.C_poisson,
            'n_nodes': int(len(self.x)),
        }
