"""
Velocity Recovery

v = X / omega0 without dividing by the vanishing weight: write

    v = (X / d) * (d / omega0),

evaluate X/d with the Hardy quotient and d/omega0 as the reciprocal of the
Hardy quotient omega0/d, which has the finite nonzero endpoint limits
|omega0'(0)| and |omega0'(1)| of a physical vacuum. Derivatives follow
from the Leibniz rule.
"""

import logging
from math import comb
from typing import List, Optional

import numpy as np

from spectral.basis import Basis, Differentiable
from spectral.hardy import DEFAULT_THETA_NODES, default_theta_nodes, hardy_matrix, hardy_quotient
from spectral.jets import jet_power

logger = logging.getLogger(__name__)


class VelocityRecovery:
    """
    Linear maps from sine coefficients of X to derivatives of v at fixed points.

    Args:
        basis: Sine basis of X
        weight: The vacuum weight omega0 as a differentiable field
        x: Evaluation points (endpoints allowed)
        max_order: Highest derivative of v needed
        n_theta: Theta nodes of the Hardy quotients

    Example:
        >>> rec = VelocityRecovery(basis, omega_field(p.evaluator), np.array([0.0]), 0)
        >>> rec.apply(np.eye(basis.n_modes)[0])
        array([4.44288294])
    """

    def __init__(self, basis: Basis, weight: Differentiable, x, max_order: int = 0,
                 n_theta: Optional[int] = None):
        self.basis = basis
        self.weight = weight
        self.x = np.atleast_1d(np.asarray(x, dtype=float))
        self.max_order = int(max_order)
        self.n_theta = n_theta or default_theta_nodes(basis.n_modes)
        self.reciprocal = self._reciprocal_jet()
        self.hardy = [hardy_matrix(basis, j, self.x, self.n_theta) for j in range(self.max_order + 1)]
        self.operators = [self._operator(k) for k in range(self.max_order + 1)]

    def _reciprocal_jet(self) -> np.ndarray:
        quotient = np.stack([
            hardy_quotient(self.weight, m, self.x, self.n_theta, check=(m == 0))
            for m in range(self.max_order + 1)
        ])
        return jet_power(quotient, -1.0)

    def _operator(self, k: int) -> np.ndarray:
        D = np.zeros((len(self.x), self.basis.n_modes))
        for j in range(k + 1):
            D += comb(k, j) * self.reciprocal[k - j][:, None] * self.hardy[j]
        return D

    def apply(self, coefficients: np.ndarray, order: int = 0) -> np.ndarray:
        """
        Evaluate v^(order) for one coefficient vector or a history.

        Args:
            coefficients: Shape (n_modes,) or (n_times, n_modes)
            order: Derivative order, at most max_order

        Returns:
            Array of shape (n_points,) or (n_times, n_points)
        """
        if order > self.max_order:
            raise ValueError(f"recovery built for order <= {self.max_order}, got {order}")
        return np.asarray(coefficients, dtype=float) @ self.operators[order].T

    def jet(self, coefficients: np.ndarray, order: Optional[int] = None) -> np.ndarray:
        """Stack of v, v', ..., v^(order) for one coefficient vector."""
        order = self.max_order if order is None else order
        return np.stack([self.apply(coefficients, k) for k in range(order + 1)])


def recover_field(X: Differentiable, weight: Differentiable, x, order: int = 0,
                  n_theta: int = DEFAULT_THETA_NODES) -> np.ndarray:
    """
    v^(order) = (X/omega0)^(order) for a general field X vanishing at the endpoints.

    Args:
        X: Weighted unknown
        weight: Vacuum weight omega0
        x: Evaluation points
        order: Derivative order
        n_theta: Theta nodes

    Returns:
        Array shaped like x
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    quotient = np.stack([hardy_quotient(weight, m, x, n_theta, check=(m == 0)) for m in range(order + 1)])
    reciprocal = jet_power(quotient, -1.0)
    result = np.zeros_like(x)
    for j in range(order + 1):
        result += comb(order, j) * reciprocal[order - j] * hardy_quotient(X, j, x, n_theta, check=(j == 0))
    return result


def recover_v(solution, weight: Differentiable, x=None, order: int = 0,
              n_theta: Optional[int] = None) -> np.ndarray:
    """
    Recover the velocity history of an XSolution.

    Args:
        solution: XSolution
        weight: Vacuum weight omega0
        x: Evaluation points (defaults to the basis nodes plus both endpoints)
        order: Spatial derivative order

    Returns:
        Array (n_times, n_points)
    """
    if x is None:
        x = np.concatenate([[0.0], solution.basis.nodes, [1.0]])
    recovery = VelocityRecovery(solution.basis, weight, x, order, n_theta)
    return recovery.apply(solution.coefficients, order)


def endpoint_limits(weight: Differentiable) -> List[float]:
    """Endpoint values of d/omega0, i.e. 1/|omega0'| at 0 and 1."""
    quotient = hardy_quotient(weight, 0, np.array([0.0, 1.0]))
    return [float(1.0 / q) for q in quotient]
