"""
Panel Differentiation

Differentiation matrices of polynomial interpolants on Gauss panels,
built from barycentric weights.
"""

from functools import lru_cache
from typing import Sequence

import numpy as np

from spectral.quadrature import gauss_legendre


def barycentric_weights(nodes: np.ndarray) -> np.ndarray:
    """w_j = 1 / prod_{k != j} (x_j - x_k)."""
    gap = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(gap, 1.0)
    return 1.0 / np.prod(gap, axis=1)


def differentiation_matrix(nodes: np.ndarray) -> np.ndarray:
    """
    Matrix D with (D f)_i = p'(x_i) for the interpolant p of f at the nodes.

    Diagonal entries use the negative-sum trick so constants differentiate
    to zero exactly.
    """
    nodes = np.asarray(nodes, dtype=float)
    w = barycentric_weights(nodes)
    gap = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(gap, 1.0)
    D = (w[None, :] / w[:, None]) / gap
    np.fill_diagonal(D, 0.0)
    np.fill_diagonal(D, -D.sum(axis=1))
    return D


@lru_cache(maxsize=16)
def _reference_matrix(n: int) -> np.ndarray:
    nodes, _ = gauss_legendre(n, -1.0, 1.0)
    D = differentiation_matrix(nodes)
    D.setflags(write=False)
    return D


def panel_derivative(values: np.ndarray, breakpoints: Sequence[float], n_per_panel: int) -> np.ndarray:
    """
    Differentiate nodal values of a composite Gauss rule panel by panel.

    Args:
        values: Values at the composite nodes, panel after panel
        breakpoints: Panel partition
        n_per_panel: Nodes per panel

    Returns:
        Derivative values at the same nodes
    """
    D = _reference_matrix(int(n_per_panel))
    values = np.asarray(values, dtype=float)
    out = np.empty_like(values)
    for i, (a, b) in enumerate(zip(breakpoints[:-1], breakpoints[1:])):
        block = slice(i * n_per_panel, (i + 1) * n_per_panel)
        out[block] = (2.0 / (b - a)) * (D @ values[block])
    return out
