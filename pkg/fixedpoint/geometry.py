"""
Flow-Map Geometry

Integrate eta(x, t) = x + int_0^t v(x, s) ds and its spatial derivatives
from a velocity history, and check admissibility: 1/2 <= eta' <= 3/2 and
eta(., t) strictly increasing.
"""

import logging
from typing import Optional

import numpy as np
from scipy.integrate import cumulative_trapezoid

from models.errors import FrozenGeometryError, ParameterError
from models.geometry import FrozenGeometry
from linearized.galerkin import time_grid
from linearized.problem import GEOMETRY_LOWER, GEOMETRY_UPPER, GEOMETRY_TOLERANCE

logger = logging.getLogger(__name__)


def integrate_geometry(times: np.ndarray, nodes: np.ndarray, v: np.ndarray) -> FrozenGeometry:
    """
    Trapezoidal time integration of a velocity jet history.

    Args:
        times: Time grid
        nodes: Spatial nodes
        v: Array (n_times, 3, n_nodes) holding v, v', v''

    Returns:
        FrozenGeometry with eta, eta', eta''
    """
    times = np.asarray(times, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    v = np.asarray(v, dtype=float)
    if v.ndim != 3 or v.shape[1] < 3 or v.shape[0] != len(times) or v.shape[2] != len(nodes):
        raise ParameterError(
            f"velocity history must have shape ({len(times)}, 3, {len(nodes)}), got {v.shape}")
    displacement = cumulative_trapezoid(v[:, 0, :], times, axis=0, initial=0.0)
    return FrozenGeometry(
        times=times,
        nodes=nodes,
        eta=nodes[None, :] + displacement,
        eta_x=1.0 + cumulative_trapezoid(v[:, 1, :], times, axis=0, initial=0.0),
        eta_xx=cumulative_trapezoid(v[:, 2, :], times, axis=0, initial=0.0),
    )


def _violation_time(times: np.ndarray, excess: np.ndarray, first: int) -> float:
    if first == 0:
        return float(times[0])
    e0, e1 = excess[first - 1], excess[first]
    t0, t1 = times[first - 1], times[first]
    return float(t0 + (t1 - t0) * (-e0) / (e1 - e0))


def check_geometry(geom: FrozenGeometry) -> None:
    """
    Verify the admissible set of flow maps.

    Raises:
        FrozenGeometryError: with the first violation time, linearly
            interpolated between stored times for the eta' bound
    """
    excess = np.maximum(np.max(geom.eta_x, axis=1) - GEOMETRY_UPPER,
                        GEOMETRY_LOWER - np.min(geom.eta_x, axis=1))
    bad = np.flatnonzero(excess > GEOMETRY_TOLERANCE)
    if len(bad):
        first = int(bad[0])
        t_star = _violation_time(geom.times, excess, first)
        raise FrozenGeometryError(
            f"eta' leaves [1/2, 3/2] at t={t_star:.6g}; shrink T below this time",
            first_violation_time=t_star,
        )
    folded = np.flatnonzero(np.any(np.diff(geom.eta, axis=1) <= 0.0, axis=1))
    if len(folded):
        t_star = float(geom.times[int(folded[0])])
        raise FrozenGeometryError(
            f"flow map stops being injective at t={t_star:.6g}; shrink T",
            first_violation_time=t_star,
        )


def update_geometry(v, T: float, dt: float, nodes: Optional[np.ndarray] = None) -> FrozenGeometry:
    """
    Build and check the frozen geometry of a velocity history.

    Args:
        v: Trajectory, or array (n_times, 3, n_nodes) of v, v', v'' at nodes
        T: Horizon
        dt: Time step; the grid has round(T/dt) + 1 points
        nodes: Spatial nodes, required when v is an array

    Returns:
        Admissible FrozenGeometry

    Raises:
        FrozenGeometryError: Bound violation or loss of injectivity

    Example:
        >>> times = np.linspace(0, 0.6, 61)
        >>> jets = np.stack([np.stack([x, np.ones_like(x), 0 * x]) for _ in times])
        >>> update_geometry(jets, 0.6, 0.01, nodes=x)
        Traceback (most recent call last):
        FrozenGeometryError: eta' leaves [1/2, 3/2] at t=0.5; shrink T below this time
    """
    times = time_grid(T, dt)
    if hasattr(v, 'velocity_jets'):
        nodes = v.basis.nodes
        jets = v.velocity_jets()
        if len(v.times) != len(times) or not np.allclose(v.times, times):
            raise ParameterError("trajectory time grid does not match (T, dt)")
    else:
        if nodes is None:
            raise ParameterError("nodes are required for an array velocity history")
        jets = np.asarray(v, dtype=float)
    geom = integrate_geometry(times, nodes, jets)
    check_geometry(geom)
    return geom
