"""
Linearized Problem

The degenerate linear parabolic problem for the weighted unknown
X = omega0 v with the flow map frozen:

    X_t / omega0 - kappa X'' + kappa (omega0'' / omega0) X = G,
    G = F - (a omega0' / eta'^gamma - gamma omega0 eta'' / eta'^(gamma+1)),

with a = gamma/(gamma-1). For gamma = 2 the pressure bracket equals
(2/eta')(rho0/eta')'.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from models.errors import FrozenGeometryError, ParameterError
from models.force import ForceField
from models.geometry import FrozenGeometry
from models.profile import DensityProfile
from models.weight import VacuumWeight
from profiles.compatibility import pressure_coefficients
from spectral.basis import Basis

logger = logging.getLogger(__name__)

GEOMETRY_LOWER = 0.5
GEOMETRY_UPPER = 1.5
GEOMETRY_TOLERANCE = 1e-12


def check_frozen_bound(eta_x: np.ndarray, t: float) -> None:
    """Raise FrozenGeometryError unless 1/2 <= eta' <= 3/2."""
    low, high = float(np.min(eta_x)), float(np.max(eta_x))
    if low < GEOMETRY_LOWER - GEOMETRY_TOLERANCE or high > GEOMETRY_UPPER + GEOMETRY_TOLERANCE:
        raise FrozenGeometryError(
            f"eta' left [1/2, 3/2] at t={t:.6g} (range [{low:.6g}, {high:.6g}]); shrink T",
            first_violation_time=float(t),
        )


def _coefficients(profile: DensityProfile, weight: Optional[VacuumWeight]):
    if weight is not None:
        return weight.gamma, weight.pressure_coefficient, weight.curvature_coefficient
    a, b, _ = pressure_coefficients(profile.gamma)
    return profile.gamma, a, b


def pressure_term(omega: np.ndarray, omega_x: np.ndarray, eta_x: np.ndarray,
                  eta_xx: np.ndarray, gamma: float, a: float, b: float) -> np.ndarray:
    """a omega0' / eta'^gamma - b omega0 eta'' / eta'^(gamma+1), with b = gamma."""
    return a * omega_x / eta_x ** gamma - b * omega * eta_xx / eta_x ** (gamma + 1.0)


def assemble_G(profile: DensityProfile, force: ForceField, geom: FrozenGeometry, t: float,
               x: Optional[np.ndarray] = None, weight: Optional[VacuumWeight] = None) -> np.ndarray:
    """
    Evaluate the source G of the linearized problem at time t.

    Args:
        profile: Density profile
        force: Self-gravity force
        geom: Frozen geometry
        t: Time
        x: Evaluation points (defaults to the geometry nodes)
        weight: Vacuum weight with the pressure coefficients

    Returns:
        G at the points

    Raises:
        FrozenGeometryError: eta' outside [1/2, 3/2] at time t

    Example:
        >>> geom = FrozenGeometry.identity([0.0], [0.0, 0.5])
        >>> assemble_G(make_profile('parabolic'), force, geom, 0.0)
        array([-1.91666667,  0.        ])
    """
    if x is None:
        x = geom.nodes
    x = np.asarray(x, dtype=float)
    eta_x, eta_xx = geom.at(t, x)
    check_frozen_bound(eta_x, t)
    gamma, a, b = _coefficients(profile, weight)
    return force.evaluate(x, 0) - pressure_term(
        profile.omega(x, 0), profile.omega(x, 1), eta_x, eta_xx, gamma, a, b)


@dataclass
class LinearProblem:
    """
    One linearized problem with its nodal data precomputed on a basis.

    Attributes:
        profile: Density profile
        force: Self-gravity force
        geometry: Frozen geometry
        kappa: Regularization parameter
        basis: Sine basis the problem is discretized on
        weight: Vacuum weight (gamma coefficients)
        source: Optional explicit source (x, t) -> G replacing the assembled one
    """

    profile: DensityProfile
    force: ForceField
    geometry: FrozenGeometry
    kappa: float
    basis: Basis
    weight: Optional[VacuumWeight] = None
    source: Optional[Callable[[np.ndarray, float], np.ndarray]] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.kappa > 0:
            raise ParameterError(f"kappa must be positive, got {self.kappa}")
        nodes = self.basis.nodes
        self.gamma, self.a, self.b = _coefficients(self.profile, self.weight)
        self.omega = np.asarray(self.profile.omega(nodes, 0), dtype=float)
        self.omega_x = np.asarray(self.profile.omega(nodes, 1), dtype=float)
        self.omega_xx = np.asarray(self.profile.omega(nodes, 2), dtype=float)
        self.force_values = np.asarray(self.force.evaluate(nodes, 0), dtype=float)
        if np.any(self.omega <= 0.0):
            raise ParameterError("vacuum weight must be positive at every quadrature node")
        self._same_nodes = (self.geometry.nodes.shape == nodes.shape
                            and np.array_equal(self.geometry.nodes, nodes))

    def G(self, t: float) -> np.ndarray:
        """Source values at the basis nodes."""
        nodes = self.basis.nodes
        if self.source is not None:
            return np.broadcast_to(np.asarray(self.source(nodes, t), dtype=float), nodes.shape)
        eta_x, eta_xx = self.geometry.at(t, None if self._same_nodes else nodes)
        check_frozen_bound(eta_x, t)
        return self.force_values - pressure_term(
            self.omega, self.omega_x, eta_x, eta_xx, self.gamma, self.a, self.b)

    def load(self, t: float) -> np.ndarray:
        """Load vector (G, e_k)."""
        return self.basis.modes.T @ (self.basis.weights * self.G(t))
