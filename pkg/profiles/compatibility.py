"""
Compatibility Data

Time derivatives u_k = d^k v/dt^k at t = 0 obtained from the equation
itself. With X = omega0 v and the flow map at rest (eta' = 1, eta'' = 0):

    u_1 = F + kappa (omega0 u0'' + 2 omega0' u0') - a omega0'
    u_2 = kappa (omega0 u1'' + 2 omega0' u1') + c omega0' u0' + b omega0 u0''

with a = gamma/(gamma-1), b = gamma and c = gamma^2/(gamma-1). Every
quotient by the vanishing weight is expanded, so nothing is divided by
omega0. Fields are evaluated lazily through derivative jets.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Tuple

import numpy as np

from models.errors import ParameterError, UnsupportedOrderError
from models.force import ForceField
from models.profile import DensityProfile, VelocityProfile
from models.run_config import MAX_COMPATIBILITY_ORDER
from spectral.jets import evaluate_jet, leibniz_product

logger = logging.getLogger(__name__)


def pressure_coefficients(gamma: float) -> Tuple[float, float, float]:
    """Return (gamma/(gamma-1), gamma, gamma^2/(gamma-1))."""
    gamma = float(gamma)
    return gamma / (gamma - 1.0), gamma, gamma * gamma / (gamma - 1.0)


@dataclass
class CompatibilityData:
    """
    The fields u_0..u_K at t = 0.

    Attributes:
        order: Highest available order K
        kappa: Regularization parameter used
        profile: Density profile
        velocity: Initial velocity u_0
        force: Self-gravity force
    """

    order: int
    kappa: float
    profile: DensityProfile = field(repr=False)
    velocity: VelocityProfile = field(repr=False)
    force: ForceField = field(repr=False)

    def jet(self, k: int, x, order: int) -> np.ndarray:
        """
        Jet of u_k at x up to the given derivative order.

        Entry j depends only on u_0..u_k and never on K, so raising K
        leaves lower-order values bitwise unchanged.
        """
        if k < 0 or k > self.order:
            raise UnsupportedOrderError(f"u_{k} requested but compatibility data has order {self.order}")
        x = np.asarray(x, dtype=float)
        if k == 0:
            return evaluate_jet(self.velocity.evaluate, x, order)

        a, b, c = pressure_coefficients(self.profile.gamma)
        W = evaluate_jet(self.profile.omega, x, order + 1)
        U0 = evaluate_jet(self.velocity.evaluate, x, order + 2)
        if k == 1:
            F = evaluate_jet(self.force.evaluate, x, order)
            viscous = leibniz_product(W, U0[2:]) + 2.0 * leibniz_product(W[1:], U0[1:])
            return F + self.kappa * viscous[:order + 1] - a * W[1:order + 2]

        U1 = self.jet(1, x, order + 2)
        viscous = leibniz_product(W, U1[2:]) + 2.0 * leibniz_product(W[1:], U1[1:])
        pressure = c * leibniz_product(W[1:], U0[1:]) + b * leibniz_product(W, U0[2:])
        return self.kappa * viscous[:order + 1] + pressure[:order + 1]

    def field(self, k: int, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th spatial derivative of u_k at x."""
        return self.jet(k, x, order)[order]

    def component(self, k: int) -> 'CompatibilityField':
        return CompatibilityField(self, k)

    def to_dict(self) -> Dict[str, Any]:
        return {'order': self.order, 'kappa': self.kappa}


@dataclass
class CompatibilityField:
    """One u_k exposed as a differentiable field."""

    data: CompatibilityData = field(repr=False)
    k: int = 1

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        return self.data.field(self.k, x, order)


def compute_uk(p: DensityProfile, u0: VelocityProfile, F: ForceField, kappa: float,
               k: int, k_max: int = MAX_COMPATIBILITY_ORDER) -> CompatibilityData:
    """
    Bundle the compatibility fields u_0..u_k.

    Args:
        p: Density profile
        u0: Initial velocity
        F: Self-gravity force of p
        kappa: Regularization parameter (kappa = 0 gives the inviscid data)
        k: Highest order requested
        k_max: Configured maximum, at most 2

    Returns:
        CompatibilityData of order k

    Raises:
        UnsupportedOrderError: k above k_max, or k_max above the supported maximum
    """
    if k_max > MAX_COMPATIBILITY_ORDER:
        raise UnsupportedOrderError(
            f"compatibility orders above {MAX_COMPATIBILITY_ORDER} are not supported (k_max={k_max})")
    if k > k_max:
        raise UnsupportedOrderError(f"u_{k} requested but k_max is {k_max}")
    if k < 0:
        raise ParameterError(f"compatibility order must be nonnegative, got {k}")
    if kappa < 0:
        raise ParameterError(f"kappa must be nonnegative, got {kappa}")
    return CompatibilityData(order=int(k), kappa=float(kappa), profile=p, velocity=u0, force=F)


def compute_u1(p: DensityProfile, u0: VelocityProfile, F: ForceField, kappa: float) -> CompatibilityField:
    """
    The first time derivative u_1 at t = 0.

    Example:
        >>> u1 = compute_u1(p, make_velocity(), compute_force(p), 1e-2)
        >>> u1.evaluate(np.array([0.0]))
        array([-1.91666667])
    """
    return compute_uk(p, u0, F, kappa, 1).component(1)
