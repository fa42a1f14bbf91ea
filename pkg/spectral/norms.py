"""
Weighted Sobolev Norms

Integer-order norms with optional weights, half-integer norms in the
Sobolev-Slobodeckij form, and the weighted embedding check. Everything is
computed from derivative jets sampled on a Gauss rule, so callers holding
nodal data (the energy analyzer) and callers holding fields share one code
path.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np

from models.errors import EmbeddingContractError
from .basis import Differentiable
from .hardy import distance
from .jets import evaluate_jet
from .quadrature import two_panel_rule

logger = logging.getLogger(__name__)

DEFAULT_NORM_NODES = 96

WeightLike = Union[None, int, float, np.ndarray, Callable[[np.ndarray], np.ndarray]]


def default_rule(n_nodes: int = DEFAULT_NORM_NODES) -> Tuple[np.ndarray, np.ndarray]:
    return two_panel_rule(n_nodes)


def field_jet(f: Differentiable, x, order: int) -> np.ndarray:
    """Jet of f at x: entries f, f', ..., f^(order)."""
    return evaluate_jet(f.evaluate, x, order)


def weight_values(weight: WeightLike, nodes: np.ndarray) -> np.ndarray:
    """
    Resolve a weight at the nodes.

    None means 1; an int or float p means d(x)^p; arrays are taken as nodal
    values; callables are evaluated at the nodes.
    """
    if weight is None:
        return np.ones_like(nodes)
    if isinstance(weight, (int, float)) and not isinstance(weight, bool):
        return distance(nodes) ** weight
    if callable(weight):
        return np.asarray(weight(nodes), dtype=float)
    values = np.asarray(weight, dtype=float)
    if values.shape != nodes.shape:
        raise ValueError(f"weight has shape {values.shape}, nodes have {nodes.shape}")
    if np.any(values < 0):
        raise ValueError("weights must be nonnegative")
    return values


def slobodeckij_seminorm_sq(g: np.ndarray, g_prime: np.ndarray,
                            nodes: np.ndarray, weights: np.ndarray) -> float:
    """
    Double integral of |g(x) - g(y)|^2 / |x - y|^2 over the unit square.

    The difference quotient is smooth for smooth g, so a tensor Gauss rule
    is used directly; its diagonal takes the limit g'(x)^2.

    Args:
        g: Values at the nodes
        g_prime: Derivative values at the nodes
        nodes: Gauss nodes (distinct)
        weights: Gauss weights
    """
    diff = g[:, None] - g[None, :]
    gap = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(gap, 1.0)
    quotient = (diff / gap) ** 2
    np.fill_diagonal(quotient, g_prime ** 2)
    return float(weights @ quotient @ weights)


def jet_norm_sq(jet: np.ndarray, s: float, nodes: np.ndarray, weights: np.ndarray,
                weight: WeightLike = None) -> float:
    """
    Squared H^s norm from a nodal jet.

    For s = k + 1/2 the jet must hold k + 2 entries; the weight multiplies
    the integer part only.

    Args:
        jet: Array (J, n_nodes) of derivatives 0..J-1
        s: Integer or half-integer order
        nodes: Quadrature nodes
        weights: Quadrature weights
        weight: Weight (see weight_values)
    """
    k = int(np.floor(s))
    half = not np.isclose(s, k)
    if half and not np.isclose(s - k, 0.5):
        raise ValueError(f"only integer and half-integer orders are supported, got {s}")
    needed = k + 2 if half else k + 1
    if len(jet) < needed:
        raise ValueError(f"H^{s} needs {needed} jet entries, got {len(jet)}")
    w = weights * weight_values(weight, nodes)
    total = float(sum(w @ (jet[j] ** 2) for j in range(k + 1)))
    if half:
        total += slobodeckij_seminorm_sq(jet[k], jet[k + 1], nodes, weights)
    return total


def sobolev_norm_sq(f: Differentiable, s: float, weight: WeightLike = None,
                    n_nodes: int = DEFAULT_NORM_NODES) -> float:
    """Squared (weighted) H^s norm of a field."""
    nodes, weights = default_rule(n_nodes)
    order = int(np.floor(s)) + (0 if float(s).is_integer() else 1)
    return jet_norm_sq(field_jet(f, nodes, order), s, nodes, weights, weight)


@dataclass(frozen=True)
class WeightedNorm:
    """
    A weighted Sobolev norm.

    Attributes:
        s: Sobolev order (integer or half-integer)
        weight: None, a power p of the boundary distance, or a weight field
        n_nodes: Quadrature nodes

    Example:
        >>> WeightedNorm(s=0, weight=1)(ExpressionField('1'), squared=True)
        0.25
    """

    s: float = 0.0
    weight: WeightLike = None
    n_nodes: int = DEFAULT_NORM_NODES

    def __call__(self, f: Differentiable, squared: bool = False) -> float:
        return weighted_norm(f, self, squared=squared)


def weighted_norm(f: Differentiable, norm: Union[WeightedNorm, float] = 0.0,
                  weight: WeightLike = None, squared: bool = False) -> float:
    """
    Evaluate a weighted Sobolev norm of f.

    Args:
        f: Field with enough derivatives
        norm: WeightedNorm, or the order s when weight is given separately
        weight: Weight used when norm is a plain order
        squared: Return the squared norm

    Returns:
        Nonnegative float
    """
    if not isinstance(norm, WeightedNorm):
        norm = WeightedNorm(s=float(norm), weight=weight)
    value = sobolev_norm_sq(f, norm.s, norm.weight, norm.n_nodes)
    return value if squared else float(np.sqrt(max(value, 0.0)))


def embedding_check(R: Differentiable, p: int, n_nodes: int = DEFAULT_NORM_NODES) -> float:
    """
    Quotient ||R||^2_{H^{1-p/2}} / int d^p (R^2 + R'^2).

    Args:
        R: Field with one derivative
        p: Weight power, 1 or 2

    Returns:
        The quotient, 0 when both sides vanish

    Raises:
        EmbeddingContractError: Right-hand side vanishes but the left does not
    """
    if p not in (1, 2):
        raise ValueError(f"embedding weight power must be 1 or 2, got {p}")
    nodes, weights = default_rule(n_nodes)
    jet = field_jet(R, nodes, 1)
    lhs = jet_norm_sq(jet, 1.0 - p / 2.0, nodes, weights)
    rhs = float((weights * distance(nodes) ** p) @ (jet[0] ** 2 + jet[1] ** 2))
    if rhs == 0.0:
        if lhs == 0.0:
            return 0.0
        raise EmbeddingContractError(f"weighted norm vanished while ||R||^2 = {lhs:.3e}")
    return lhs / rhs
