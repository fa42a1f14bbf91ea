"""
Derivative Jets

A jet is an array whose leading axis holds derivatives 0..J of a field at a
set of points. Products use the Leibniz rule, powers use the recurrence
obtained by differentiating g h' = p g' h. Entry j of every result depends
only on entries <= j of the inputs, so truncating a jet never changes the
values that remain.
"""

from math import comb
from typing import Callable

import numpy as np


def evaluate_jet(fn: Callable[[np.ndarray, int], np.ndarray], x: np.ndarray, order: int) -> np.ndarray:
    """Stack fn(x, k) for k = 0..order."""
    x = np.asarray(x, dtype=float)
    return np.stack([np.broadcast_to(fn(x, k), x.shape).astype(float) for k in range(order + 1)])


def leibniz_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Jet of the product of two fields."""
    order = min(len(a), len(b))
    out = np.zeros((order,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]))
    for j in range(order):
        for i in range(j + 1):
            out[j] = out[j] + comb(j, i) * a[i] * b[j - i]
    return out


def jet_power(g: np.ndarray, p: float) -> np.ndarray:
    """
    Jet of g^p for a jet g that does not vanish.

    Args:
        g: Jet of the base field, nonzero in entry 0
        p: Real exponent

    Returns:
        Jet of the same length
    """
    if p == 1.0:
        return np.array(g, dtype=float, copy=True)
    h = np.zeros_like(g, dtype=float)
    h[0] = np.power(g[0], p)
    for n in range(1, len(g)):
        acc = np.zeros_like(g[0], dtype=float)
        for j in range(n):
            acc = acc + p * comb(n - 1, j) * g[j + 1] * h[n - 1 - j]
        for j in range(1, n):
            acc = acc - comb(n - 1, j) * g[j] * h[n - j]
        h[n] = acc / g[0]
    return h
