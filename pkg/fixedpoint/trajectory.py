"""
Velocity Trajectory

A history of sine coefficients of X = omega0 v together with the maps that
turn it into velocities, flow maps and state snapshots.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.geometry import FrozenGeometry, LagrangianState
from models.profile import DensityProfile
from spectral.basis import Basis, Differentiable, SpectralField
from linearized.recovery import VelocityRecovery


@dataclass
class Trajectory:
    """
    One Picard iterate.

    Velocities are recovered at the points [0, nodes..., 1], so column 0 and
    the last column are the boundary velocities.

    Attributes:
        times: Time grid
        coefficients: X coefficients, shape (n_times, n_modes)
        basis: Sine basis
        recovery: VelocityRecovery at [0, nodes, 1] up to second derivatives
        weight: Vacuum weight omega0
        profile: Density profile
    """

    times: np.ndarray
    coefficients: np.ndarray
    basis: Basis = field(repr=False)
    recovery: VelocityRecovery = field(repr=False)
    weight: Differentiable = field(repr=False)
    profile: Optional[DensityProfile] = field(default=None, repr=False)

    @property
    def points(self) -> np.ndarray:
        return self.recovery.x

    def velocity(self, order: int = 0) -> np.ndarray:
        """v^(order) at the recovery points, shape (n_times, n_points)."""
        return self.recovery.apply(self.coefficients, order)

    def nodal_velocity(self, order: int = 0) -> np.ndarray:
        """v^(order) at the basis nodes."""
        return self.velocity(order)[:, 1:-1]

    def velocity_jets(self) -> np.ndarray:
        """Array (n_times, 3, n_nodes) of v, v', v'' at the basis nodes."""
        return np.stack([self.nodal_velocity(k) for k in range(3)], axis=1)

    def boundary_velocity(self) -> np.ndarray:
        """Array (n_times, 2) of v(0, t) and v(1, t)."""
        v = self.velocity(0)
        return np.stack([v[:, 0], v[:, -1]], axis=1)

    def X(self, i: int) -> SpectralField:
        return SpectralField(self.coefficients[i], self.basis)

    def geometry(self) -> FrozenGeometry:
        """Flow map of this velocity history (unchecked)."""
        from .geometry import integrate_geometry
        return integrate_geometry(self.times, self.basis.nodes, self.velocity_jets())

    def state(self, i: int, geometry: Optional[FrozenGeometry] = None) -> LagrangianState:
        """Snapshot at the i-th stored time."""
        geometry = geometry or self.geometry()
        return LagrangianState(
            t=float(self.times[i]),
            x=self.basis.nodes,
            v=self.nodal_velocity(0)[i],
            eta=geometry.eta[i],
            eta_x=geometry.eta_x[i],
            X=self.basis.modes @ self.coefficients[i],
        )

    def with_coefficients(self, coefficients: np.ndarray) -> 'Trajectory':
        return Trajectory(self.times, coefficients, self.basis, self.recovery, self.weight, self.profile)
