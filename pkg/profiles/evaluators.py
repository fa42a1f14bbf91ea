"""
Profile Evaluators

Objects that evaluate initial data and its derivatives at arbitrary
points: closed forms through sympy, tabulated data through cubic splines,
and mollified data through kernel convolution.
"""

import logging
from functools import lru_cache
from typing import Callable, Union

import numpy as np
import sympy as sp
from scipy.interpolate import CubicSpline

from spectral.basis import ExpressionField
from spectral.jets import evaluate_jet, jet_power
from spectral.quadrature import gauss_legendre

logger = logging.getLogger(__name__)

CONVOLUTION_NODES = 96
R_SYMBOL = sp.Symbol('r', real=True)


def density_from_omega(omega_fn: Callable[[np.ndarray, int], np.ndarray], gamma: float,
                       x: np.ndarray, order: int) -> np.ndarray:
    """
    Derivatives of rho0 = omega0^(1/(gamma-1)) from derivatives of omega0.

    Higher derivatives are singular where omega0 vanishes unless gamma = 2
    or 1/(gamma-1) is large enough; those points come back as inf or nan.
    """
    if gamma == 2.0:
        return omega_fn(x, order)
    power = 1.0 / (gamma - 1.0)
    if order == 0:
        return np.power(np.clip(omega_fn(x, 0), 0.0, None), power)
    with np.errstate(divide='ignore', invalid='ignore'):
        return jet_power(evaluate_jet(omega_fn, x, order), power)[order]


class ConstantEvaluator:
    """A constant field."""

    def __init__(self, value: float):
        self.value = float(value)

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.full(x.shape, self.value if order == 0 else 0.0)


class ExpressionEvaluator:
    """
    Closed-form density and vacuum weight.

    When gamma = 2 the weight expression is the density expression itself,
    so both evaluate through the same compiled functions.
    """

    def __init__(self, density_expr: Union[str, sp.Expr], gamma: float,
                 omega_expr: Union[str, sp.Expr, None] = None):
        self.gamma = float(gamma)
        self.density_field = ExpressionField(density_expr)
        if omega_expr is None:
            if self.gamma == 2.0:
                self.omega_field = self.density_field
            else:
                self.omega_field = ExpressionField(
                    self.density_field.expr ** sp.nsimplify(self.gamma - 1.0))
        else:
            self.omega_field = ExpressionField(omega_expr)

    def density(self, x, order: int = 0) -> np.ndarray:
        return self.density_field.evaluate(x, order)

    def omega(self, x, order: int = 0) -> np.ndarray:
        return self.omega_field.evaluate(x, order)

    @property
    def closed_form(self) -> str:
        return str(self.density_field.expr)


class SplineField:
    """Cubic spline through samples; derivatives above three vanish."""

    def __init__(self, x: np.ndarray, values: np.ndarray):
        self.spline = CubicSpline(np.asarray(x, dtype=float), np.asarray(values, dtype=float))

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if order > 3:
            return np.zeros(x.shape)
        return self.spline(x, order)


class SplineEvaluator:
    """Tabulated density with the weight omega0 = rho0^(gamma-1) splined separately."""

    def __init__(self, x: np.ndarray, rho0: np.ndarray, gamma: float):
        self.gamma = float(gamma)
        self.density_field = SplineField(x, rho0)
        if self.gamma == 2.0:
            self.omega_field = self.density_field
        else:
            self.omega_field = SplineField(x, np.power(np.clip(rho0, 0.0, None), self.gamma - 1.0))

    def density(self, x, order: int = 0) -> np.ndarray:
        return self.density_field.evaluate(x, order)

    def omega(self, x, order: int = 0) -> np.ndarray:
        return self.omega_field.evaluate(x, order)


@lru_cache(maxsize=16)
def _kernel_derivative(order: int) -> Callable[[np.ndarray], np.ndarray]:
    bump = sp.exp(-1 / (1 - R_SYMBOL ** 2))
    return sp.lambdify(R_SYMBOL, sp.diff(bump, R_SYMBOL, order), 'numpy')


def kernel(r, order: int = 0) -> np.ndarray:
    """Unnormalized bump exp(-1/(1 - r^2)) on (-1, 1) and its derivatives."""
    r = np.asarray(r, dtype=float)
    inside = np.abs(r) < 1.0
    out = np.zeros(r.shape)
    with np.errstate(over='ignore', divide='ignore', invalid='ignore'):
        values = np.asarray(_kernel_derivative(order)(np.where(inside, r, 0.0)), dtype=float)
    out[inside] = np.broadcast_to(values, r.shape)[inside]
    return np.nan_to_num(out, nan=0.0, posinf=0.0, neginf=0.0)


class MollifiedField:
    """
    Convolution of a reflected field with the bump kernel of width epsilon.

    The integral over the kernel support is split where the reflection
    point falls, since the extension is only continuous there.

    Args:
        base: Field on [0, 1] (only values are used)
        width: Kernel radius epsilon, below 1/2
        reflection: 'even' (u(-y)) or 'odd' (-u(-y)) across each endpoint
    """

    def __init__(self, base, width: float, reflection: str = 'even'):
        if reflection not in ('even', 'odd'):
            raise ValueError(f"unknown reflection '{reflection}'")
        self.base = base
        self.width = float(width)
        self.reflection = reflection
        self._ref_t, self._ref_w = gauss_legendre(CONVOLUTION_NODES, -1.0, 1.0)

    def extension(self, y: np.ndarray) -> np.ndarray:
        """Reflected extension of the base field to [-1/2, 3/2]."""
        y = np.asarray(y, dtype=float)
        left, right = y < 0.0, y > 1.0
        mirrored = np.where(left, -y, np.where(right, 2.0 - y, y))
        values = self.base.evaluate(mirrored, 0)
        if self.reflection == 'odd':
            values = np.where(left | right, -values, values)
        return values

    def _panels(self, x: np.ndarray):
        eps = self.width
        split = np.zeros_like(x)
        for point in (x / eps, (x - 1.0) / eps):
            inside = (point > -1.0) & (point < 1.0)
            split = np.where(inside, point, split)
        t, w = self._ref_t, self._ref_w
        lo_half = 0.5 * (split + 1.0)
        hi_half = 0.5 * (1.0 - split)
        r = np.concatenate([-1.0 + lo_half[:, None] * (t + 1.0),
                            split[:, None] + hi_half[:, None] * (t + 1.0)], axis=1)
        weights = np.concatenate([lo_half[:, None] * w, hi_half[:, None] * w], axis=1)
        return r, weights

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flat = x.ravel()
        r, weights = self._panels(flat)
        normalization = np.sum(weights * kernel(r, 0), axis=1)
        samples = self.extension(flat[:, None] - self.width * r)
        values = np.sum(weights * samples * kernel(r, order), axis=1)
        values = values / (self.width ** order * normalization)
        return values.reshape(x.shape)


class MollifiedVelocityEvaluator:
    """Even-reflection mollification of an initial velocity."""

    def __init__(self, base, width: float):
        self.field = MollifiedField(base, width, reflection='even')

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        return self.field.evaluate(x, order)


class MollifiedDensityEvaluator:
    """
    Mollified vacuum weight with exact Dirichlet values.

    The weight is the odd-reflection mollification M minus the affine
    interpolant of M(0), M(1); the density follows from the weight.
    """

    def __init__(self, base_omega, width: float, gamma: float):
        self.gamma = float(gamma)
        self.field = MollifiedField(base_omega, width, reflection='odd')
        self.m0, self.m1 = (float(v) for v in self.field.evaluate(np.array([0.0, 1.0]), 0))

    def omega(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        values = self.field.evaluate(x, order)
        if order == 0:
            values = values - (self.m0 * (1.0 - x) + self.m1 * x)
            values = np.where((x == 0.0) | (x == 1.0), 0.0, values)
        elif order == 1:
            values = values - (self.m1 - self.m0)
        return values

    def density(self, x, order: int = 0) -> np.ndarray:
        return density_from_omega(self.omega, self.gamma, np.asarray(x, dtype=float), order)


class _OmegaView:
    """Adapter exposing an evaluator's omega as a plain field."""

    def __init__(self, evaluator):
        self.evaluator = evaluator

    def evaluate(self, x, order: int = 0) -> np.ndarray:
        return self.evaluator.omega(np.asarray(x, dtype=float), order)


def omega_field(evaluator) -> _OmegaView:
    return _OmegaView(evaluator)


