"""
Self-Gravity Force

In Lagrangian coordinates the Poisson equation integrates once in closed
form, giving the time-independent force

    F(x) = C (M/2 - m(x)),   m(x) = int_0^x rho0,   M = m(1),

under the symmetric far-field closure. Only rho0 enters; the flow map
never does.
"""

import logging
from typing import Optional

import numpy as np

from models.force import ForceField
from models.profile import DensityProfile
from spectral.quadrature import composite_gauss, gauss_legendre
from .differentiation import panel_derivative

logger = logging.getLogger(__name__)

PANEL_NODES = 8
EVALUATION_PANELS = 8


class CumulativeMass:
    """
    m(x) = int_0^x rho0 by composite Gauss-Legendre on the sample partition.

    Whole panels and partial panels go through the same routine, so m(1)
    equals the total mass bitwise.
    """

    def __init__(self, profile: DensityProfile, n_per_panel: int = PANEL_NODES):
        self.profile = profile
        self.n_per_panel = int(n_per_panel)
        self.breakpoints = np.asarray(profile.x, dtype=float)
        cumulative = [0.0]
        for a, b in zip(self.breakpoints[:-1], self.breakpoints[1:]):
            panel = self._integrate(np.array([a]), np.array([b]))[0]
            cumulative.append(cumulative[-1] + panel)
        self.cumulative = np.array(cumulative)
        self.total = float(self.cumulative[-1])

    def _integrate(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        t, w = gauss_legendre(self.n_per_panel, 0.0, 1.0)
        length = b - a
        nodes = a[:, None] + length[:, None] * t[None, :]
        values = self.profile.density(nodes, 0)
        return length * (values * w).sum(axis=-1)

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        bp = self.breakpoints
        panel = np.clip(np.searchsorted(bp, flat, side='right') - 1, 0, len(bp) - 2)
        partial = self._integrate(bp[panel], flat)
        return (self.cumulative[panel] + partial).reshape(x.shape)


def compute_force(p: DensityProfile, C_poisson: float = 1.0,
                  n_panels: int = EVALUATION_PANELS,
                  n_per_panel: int = PANEL_NODES) -> ForceField:
    """
    Compute the Lagrangian self-gravity force of a profile.

    Args:
        p: Density profile
        C_poisson: Constant C of the Poisson equation
        n_panels: Uniform panels of the evaluation rule
        n_per_panel: Gauss nodes per panel

    Returns:
        ForceField sampled on the evaluation rule

    Example:
        >>> force = compute_force(make_profile('parabolic'))
        >>> force.total_mass
        0.16666666666666666
    """
    mass = CumulativeMass(p, n_per_panel)
    x, _ = composite_gauss(np.linspace(0.0, 1.0, n_panels + 1), n_per_panel)
    m = mass(x)
    F = C_poisson * (0.5 * mass.total - m)
    logger.debug(f"Force: M = {mass.total:.12g}, F(0) = {C_poisson * 0.5 * mass.total:.6g}")
    return ForceField(
        x=x,
        F=F,
        m=m,
        total_mass=mass.total,
        C_poisson=float(C_poisson),
        mass_fn=mass,
        density_fn=p.density,
    )


def check_poisson_consistency(F: ForceField, p: DensityProfile,
                              n_panels: Optional[int] = None) -> float:
    """
    Residual max |F' + C rho0| at the force nodes.

    F' is the derivative of the per-panel polynomial interpolant of the
    stored force values, so any perturbation of F.F shows up directly.

    Args:
        F: Force field sampled on a uniform composite Gauss rule
        p: Density profile

    Returns:
        Residual in the max norm
    """
    if n_panels is None:
        n_panels = len(F.x) // PANEL_NODES
    n_per_panel = len(F.x) // n_panels
    derivative = panel_derivative(F.F, np.linspace(0.0, 1.0, n_panels + 1), n_per_panel)
    residual = float(np.max(np.abs(derivative + F.C_poisson * p.density(F.x, 0))))
    logger.debug(f"Poisson residual {residual:.3e}")
    return residual


def momentum_neutrality(F: ForceField, p: DensityProfile,
                        n_per_panel: int = PANEL_NODES) -> float:
    """
    int_0^1 rho0 F dx, which vanishes for every profile.

    Integrated by composite Gauss-Legendre on the sample partition, with F
    evaluated from the cumulative mass.
    """
    x, w = composite_gauss(np.asarray(p.x, dtype=float), n_per_panel)
    return float(w @ (p.density(x, 0) * F.evaluate(x, 0)))
