"""
Dirichlet Sine Basis

Eigenfunctions e_i(x) = sqrt(2) sin(i pi x) of the Dirichlet Laplacian on
[0, 1], the interior quadrature they are integrated with, and fields
expanded in them.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional, Protocol, Union

import numpy as np
import sympy as sp

from .quadrature import two_panel_rule, quadrature_size

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)
X_SYMBOL = sp.Symbol('x', real=True)


class Differentiable(Protocol):
    """Anything that can be evaluated with derivatives at points."""

    def evaluate(self, x: np.ndarray, order: int = 0) -> np.ndarray:
        ...


class ExpressionField:
    """
    Field given by a sympy expression in x, differentiated symbolically.

    Example:
        >>> u = ExpressionField('x*(1 - x)')
        >>> u.evaluate(np.array([0.5]), order=1)
        array([0.])
    """

    def __init__(self, expr: Union[str, sp.Expr], symbol: sp.Symbol = X_SYMBOL):
        if isinstance(expr, str):
            expr = sp.sympify(expr, locals={'x': symbol})
        self.expr = expr
        self.symbol = symbol
        self._cache = {}

    def derivative_expr(self, order: int) -> sp.Expr:
        return sp.diff(self.expr, self.symbol, order) if order else self.expr

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        fn = self._cache.get(order)
        if fn is None:
            fn = sp.lambdify(self.symbol, self.derivative_expr(order), 'numpy')
            self._cache[order] = fn
        with np.errstate(divide='ignore', invalid='ignore'):
            values = fn(x)
        return np.broadcast_to(np.asarray(values, dtype=float), x.shape).copy()

    def __repr__(self) -> str:
        return f"ExpressionField({self.expr})"


def _mode_derivative(arg: np.ndarray, order: int) -> np.ndarray:
    phase = order % 4
    if phase == 0:
        return np.sin(arg)
    if phase == 1:
        return np.cos(arg)
    if phase == 2:
        return -np.sin(arg)
    return -np.cos(arg)


@dataclass
class Basis:
    """
    First n_modes sine eigenfunctions with their quadrature.

    Attributes:
        n_modes: Number of modes
        nodes: Interior Gauss nodes (two panels split at 1/2)
        weights: Quadrature weights
        wavenumbers: i * pi for i = 1..n_modes
        modes: Mode values at the nodes, shape (n_nodes, n_modes)

    Example:
        >>> basis = build_basis(4)
        >>> np.allclose(basis.gram(), np.eye(4))
        True
    """

    n_modes: int
    nodes: np.ndarray
    weights: np.ndarray
    wavenumbers: np.ndarray
    modes: np.ndarray = field(repr=False)

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues (i pi)^2 of -d^2/dx^2."""
        return self.wavenumbers ** 2

    def mode_values(self, x, order: int = 0) -> np.ndarray:
        """
        Derivatives of every mode at arbitrary points.

        Args:
            x: Points, any shape
            order: Derivative order

        Returns:
            Array of shape x.shape + (n_modes,)
        """
        x = np.asarray(x, dtype=float)
        k = self.wavenumbers
        values = SQRT2 * k ** order * _mode_derivative(x[..., None] * k, order)
        if order % 2 == 0:
            values[(x == 0.0) | (x == 1.0)] = 0.0
        return values

    def gram(self) -> np.ndarray:
        return self.modes.T @ (self.weights[:, None] * self.modes)

    def integrate(self, values: np.ndarray) -> np.ndarray:
        """Quadrature over the last axis of nodal values."""
        return values @ self.weights


@lru_cache(maxsize=32)
def _cached_basis(n: int, n_quad: int) -> Basis:
    nodes, weights = two_panel_rule(n_quad)
    wavenumbers = np.pi * np.arange(1, n + 1, dtype=float)
    basis = Basis(n_modes=n, nodes=nodes, weights=weights, wavenumbers=wavenumbers,
                  modes=np.empty((0, 0)))
    basis.modes = basis.mode_values(nodes)
    for arr in (nodes, weights, wavenumbers, basis.modes):
        arr.setflags(write=False)
    logger.debug(f"Built sine basis: {n} modes, {len(nodes)} quadrature nodes")
    return basis


def build_basis(n: int, quadrature_factor: int = 4, n_quad: Optional[int] = None) -> Basis:
    """
    Build the first n Dirichlet eigenfunctions.

    Args:
        n: Number of modes, at least 1
        quadrature_factor: Nodes per mode of the default rule
        n_quad: Explicit node count, at least 2 n + 8

    Returns:
        Shared, read-only Basis instance
    """
    if n < 1:
        raise ValueError(f"basis needs at least one mode, got {n}")
    if n_quad is None:
        n_quad = quadrature_size(n, quadrature_factor)
    elif n_quad < 2 * n + 8:
        raise ValueError(f"{n_quad} quadrature nodes cannot resolve {n} modes")
    return _cached_basis(int(n), int(n_quad))


@dataclass
class SpectralField:
    """
    Field sum_i c_i e_i(x).

    Attributes:
        coefficients: Expansion coefficients
        basis: Basis the coefficients refer to
    """

    coefficients: np.ndarray
    basis: Basis = field(repr=False)

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        """Evaluate the order-th derivative; exactly 0 at the endpoints for even orders."""
        return self.basis.mode_values(x, order) @ self.coefficients

    def at_nodes(self, order: int = 0) -> np.ndarray:
        if order == 0:
            return self.basis.modes @ self.coefficients
        return self.evaluate(self.basis.nodes, order)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(self.coefficients ** 2)))

    def h1_norm(self) -> float:
        return float(np.sqrt(np.sum((1.0 + self.basis.eigenvalues) * self.coefficients ** 2)))

    def __add__(self, other: 'SpectralField') -> 'SpectralField':
        return SpectralField(self.coefficients + other.coefficients, self.basis)

    def __mul__(self, scalar: float) -> 'SpectralField':
        return SpectralField(scalar * self.coefficients, self.basis)

    __rmul__ = __mul__


FieldLike = Union[np.ndarray, Callable[[np.ndarray], np.ndarray], Differentiable, float]


def nodal_values(f: FieldLike, basis: Basis) -> np.ndarray:
    """Values of a field at the basis nodes."""
    if hasattr(f, 'evaluate'):
        return np.asarray(f.evaluate(basis.nodes, 0), dtype=float)
    if callable(f):
        return np.broadcast_to(np.asarray(f(basis.nodes), dtype=float), basis.nodes.shape).copy()
    values = np.asarray(f, dtype=float)
    if values.ndim == 0:
        return np.full(basis.nodes.shape, float(values))
    if values.shape != basis.nodes.shape:
        raise ValueError(f"expected {basis.nodes.shape} nodal values, got {values.shape}")
    return values


def project(f: FieldLike, basis: Basis) -> SpectralField:
    """
    L2 projection onto the basis.

    Args:
        f: Field as nodal values, callable or Differentiable
        basis: Target basis

    Returns:
        SpectralField with c_i = <f, e_i>
    """
    values = nodal_values(f, basis)
    return SpectralField(basis.modes.T @ (basis.weights * values), basis)
