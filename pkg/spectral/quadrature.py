"""
Quadrature Rules

Gauss-Legendre rules mapped to intervals and composed over partitions.
All rules are interior: no node ever lands on a partition breakpoint.
"""

from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from scipy import special


@lru_cache(maxsize=64)
def _reference_rule(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = special.roots_legendre(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int, a: float = 0.0, b: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """
    n-point Gauss-Legendre rule on [a, b].

    Args:
        n: Number of nodes
        a: Left end
        b: Right end

    Returns:
        Tuple (nodes, weights)
    """
    ref_x, ref_w = _reference_rule(int(n))
    half = 0.5 * (b - a)
    return a + half * (ref_x + 1.0), half * ref_w


def composite_gauss(breakpoints: Sequence[float], n_per_panel: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre rule repeated on every panel of a partition."""
    xs, ws = [], []
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        x, w = gauss_legendre(n_per_panel, a, b)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def two_panel_rule(n_total: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gauss rule split at x = 1/2.

    The boundary distance d(x) = min(x, 1 - x) is smooth on each half, so
    integrands built from d, 1/d or the vacuum weight stay smooth per panel.
    """
    n_half = (int(n_total) + 1) // 2
    return composite_gauss([0.0, 0.5, 1.0], n_half)


def quadrature_size(n_modes: int, quadrature_factor: int = 4) -> int:
    """Node count max(2 n + 8, factor n + 32)."""
    return max(2 * n_modes + 8, quadrature_factor * n_modes + 32)
