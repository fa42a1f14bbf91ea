"""
Geometry and State Models

Flow-map snapshots of the Lagrangian formulation: the frozen geometry used
by the linearized solver and per-time state records of a trajectory.
"""

from dataclasses import dataclass
from typing import Optional, Tuple, Dict, Any

import numpy as np


@dataclass
class FrozenGeometry:
    """
    Flow map eta(x, t) and its spatial derivatives sampled on a time grid.

    Arrays are shaped (n_times, n_nodes). Values between stored times are
    interpolated linearly; values between nodes are interpolated linearly
    and held constant outside the node range.

    Attributes:
        times: Time grid
        nodes: Spatial nodes
        eta: Flow map
        eta_x: First spatial derivative
        eta_xx: Second spatial derivative
    """

    times: np.ndarray
    nodes: np.ndarray
    eta: np.ndarray
    eta_x: np.ndarray
    eta_xx: np.ndarray

    @classmethod
    def identity(cls, times: np.ndarray, nodes: np.ndarray) -> 'FrozenGeometry':
        """Geometry of the gas at rest: eta = x."""
        return cls.constant(times, nodes, eta_x=1.0)

    @classmethod
    def constant(cls, times: np.ndarray, nodes: np.ndarray,
                 eta_x: float = 1.0, eta_xx: float = 0.0) -> 'FrozenGeometry':
        """
        Geometry with spatially and temporally constant derivatives.

        Args:
            times: Time grid
            nodes: Spatial nodes
            eta_x: Constant value of eta'
            eta_xx: Constant value of eta''
        """
        times = np.asarray(times, dtype=float)
        nodes = np.asarray(nodes, dtype=float)
        shape = (len(times), len(nodes))
        return cls(
            times=times,
            nodes=nodes,
            eta=np.broadcast_to(eta_x * nodes, shape).copy(),
            eta_x=np.full(shape, float(eta_x)),
            eta_xx=np.full(shape, float(eta_xx)),
        )

    def _time_weights(self, t: float) -> Tuple[int, int, float]:
        if len(self.times) == 1 or t <= self.times[0]:
            return 0, 0, 0.0
        if t >= self.times[-1]:
            last = len(self.times) - 1
            return last, last, 0.0
        hi = int(np.searchsorted(self.times, t, side='right'))
        lo = hi - 1
        theta = (t - self.times[lo]) / (self.times[hi] - self.times[lo])
        return lo, hi, float(theta)

    def at(self, t: float, x: Optional[np.ndarray] = None) -> Tuple[np.ndarray, np.ndarray]:
        """
        Return (eta', eta'') at time t.

        Args:
            t: Time, linearly interpolated between snapshots
            x: Optional evaluation points; defaults to the stored nodes

        Returns:
            Tuple of arrays (eta_x, eta_xx)
        """
        lo, hi, theta = self._time_weights(t)
        eta_x = (1.0 - theta) * self.eta_x[lo] + theta * self.eta_x[hi]
        eta_xx = (1.0 - theta) * self.eta_xx[lo] + theta * self.eta_xx[hi]
        if x is None:
            return eta_x, eta_xx
        x = np.asarray(x, dtype=float)
        return np.interp(x, self.nodes, eta_x), np.interp(x, self.nodes, eta_xx)


@dataclass
class LagrangianState:
    """
    One snapshot of a trajectory at quadrature nodes.

    Attributes:
        t: Time
        x: Nodes
        v: Velocity
        eta: Flow map
        eta_x: Deformation gradient
        X: Weighted unknown omega0 * v
    """

    t: float
    x: np.ndarray
    v: np.ndarray
    eta: np.ndarray
    eta_x: np.ndarray
    X: np.ndarray

    def to_dict(self) -> Dict[str, Any]:
        return {
            't': self.t,
            'x': self.x.tolist(),
            'v': self.v.tolist(),
            'eta': self.eta.tolist(),
            'eta_x': self.eta_x.tolist(),
            'X': self.X.tolist(),
        }
