"""
Hardy Quotient

Stable evaluation of u/d for fields vanishing at both endpoints, where
d(x) = min(x, 1 - x) is the distance to the boundary. Near x = 0 the
quotient and its derivatives are written as

    d^m/dx^m (u/x)(x) = int_0^1 theta^m u^(m+1)(theta x) dtheta

and symmetrically near x = 1, so no division by a small number ever
happens and the endpoint values come out as the one-sided limits.
"""

import logging
from typing import Optional

import numpy as np

from models.errors import HardyContractError
from models.reports import HardyReport
from .basis import Basis, Differentiable
from .quadrature import gauss_legendre, two_panel_rule

logger = logging.getLogger(__name__)

DEFAULT_THETA_NODES = 64
ENDPOINT_TOLERANCE = 1e-10


def distance(x) -> np.ndarray:
    """Distance d(x) = min(x, 1 - x) to the boundary of [0, 1]."""
    x = np.asarray(x, dtype=float)
    return np.minimum(x, 1.0 - x)


def default_theta_nodes(n_modes: int, minimum: int = DEFAULT_THETA_NODES) -> int:
    """Theta nodes that integrate the highest mode's oscillation exactly enough."""
    return max(minimum, 2 * n_modes + 32)


def _theta_arguments(x: np.ndarray, n_theta: int):
    theta, w = gauss_legendre(n_theta, 0.0, 1.0)
    left = x <= 0.5
    args = np.where(left[:, None], theta[None, :] * x[:, None],
                    1.0 - theta[None, :] * (1.0 - x[:, None]))
    sign = np.where(left, 1.0, -1.0)
    return theta, w, args, sign


def check_endpoints(u: Differentiable, sup: Optional[float] = None) -> None:
    """
    Raise HardyContractError unless u(0) and u(1) vanish.

    Args:
        u: Field to check
        sup: Scale of the field; the tolerance is 1e-10 max(1, sup)
    """
    ends = np.asarray(u.evaluate(np.array([0.0, 1.0]), 0), dtype=float)
    scale = max(1.0, float(sup) if sup is not None else float(np.max(np.abs(ends))))
    if np.any(~np.isfinite(ends)) or np.max(np.abs(ends)) > ENDPOINT_TOLERANCE * scale:
        raise HardyContractError(
            f"Hardy quotient needs u(0) = u(1) = 0, got u(0)={ends[0]:.3e}, u(1)={ends[1]:.3e}"
        )


def hardy_quotient(u: Differentiable, m: int, x, n_theta: int = DEFAULT_THETA_NODES,
                   check: bool = True) -> np.ndarray:
    """
    Evaluate the m-th derivative of u/d at points x.

    Args:
        u: Field vanishing at both endpoints with m + 1 derivatives
        m: Derivative order of the quotient
        x: Evaluation points in [0, 1], endpoints allowed
        n_theta: Gauss nodes of the theta integral
        check: Verify the endpoint contract first

    Returns:
        Array shaped like x

    Raises:
        HardyContractError: u does not vanish at an endpoint

    Example:
        >>> hardy_quotient(ExpressionField('sin(pi*x)'), 0, np.array([0.0]))
        array([3.14159265])
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if check:
        grid = np.linspace(0.0, 1.0, 33)
        check_endpoints(u, sup=float(np.max(np.abs(u.evaluate(grid, 0)))))
    theta, w, args, sign = _theta_arguments(x.ravel(), n_theta)
    values = np.asarray(u.evaluate(args, m + 1), dtype=float)
    result = sign * ((values * theta ** m) @ w)
    return result.reshape(x.shape)


def hardy_matrix(basis: Basis, m: int, x, n_theta: Optional[int] = None) -> np.ndarray:
    """
    Matrix H with H[:, i] = d^m/dx^m (e_i/d) at the points x.

    Sine modes vanish at the endpoints, so no contract check is needed.

    Args:
        basis: Sine basis
        m: Derivative order
        x: Evaluation points
        n_theta: Theta nodes; defaults to default_theta_nodes(basis.n_modes)

    Returns:
        Array of shape (len(x), n_modes)
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if n_theta is None:
        n_theta = default_theta_nodes(basis.n_modes)
    theta, w, args, sign = _theta_arguments(x, n_theta)
    modes = basis.mode_values(args, m + 1)
    return sign[:, None] * np.einsum('qtn,t->qn', modes, w * theta ** m)


def _integer_norm_sq(jets, weights) -> float:
    return float(sum(np.dot(weights, j ** 2) for j in jets))


def hardy_ratio(u: Differentiable, s: int, n_nodes: int = 128,
                n_theta: int = DEFAULT_THETA_NODES) -> HardyReport:
    """
    Measure the constant of ||u/d||_{H^{s-1}} <= C ||u||_{H^s}.

    Args:
        u: Field vanishing at both endpoints
        s: Integer order, at least 1
        n_nodes: Quadrature nodes of the norms
        n_theta: Theta nodes of the quotient

    Returns:
        HardyReport with both norms and their ratio
    """
    if s < 1:
        raise ValueError(f"Hardy ratio needs s >= 1, got {s}")
    nodes, weights = two_panel_rule(n_nodes)
    quotient = [hardy_quotient(u, j, nodes, n_theta, check=(j == 0)) for j in range(s)]
    field_jets = [u.evaluate(nodes, j) for j in range(s + 1)]
    lhs = np.sqrt(_integer_norm_sq(quotient, weights))
    rhs = np.sqrt(_integer_norm_sq(field_jets, weights))
    ratio = float(lhs / rhs) if rhs > 0 else 0.0
    logger.debug(f"Hardy ratio s={s}: {lhs:.6g} / {rhs:.6g} = {ratio:.6g}")
    return HardyReport(s=s, quotient_norm=float(lhs), field_norm=float(rhs), ratio=ratio)
