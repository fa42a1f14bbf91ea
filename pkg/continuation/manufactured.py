"""
Manufactured Solutions

A prescribed X*(x, t) turned into an exact solution of the linearized
problem by choosing the source

    G* = X*_t / omega0 - kappa X*'' + kappa (omega0'' / omega0) X*

symbolically. Used to measure the temporal and spatial convergence of the
weighted Galerkin solver.
"""

import logging
from typing import Optional, Union

import numpy as np
import sympy as sp

from models.errors import ParameterError
from models.geometry import FrozenGeometry
from models.profile import DensityProfile
from spectral.basis import X_SYMBOL, build_basis, project
from gravity.force import compute_force
from linearized.galerkin import LinearizedSolver, XSolution, time_grid
from linearized.problem import LinearProblem

logger = logging.getLogger(__name__)

T_SYMBOL = sp.Symbol('t', real=True)
DEFAULT_SOLUTION = 'exp(-t)*sin(pi*x)/(2 - cos(2*pi*x))'


def weight_expression(profile: DensityProfile) -> sp.Expr:
    """Symbolic vacuum weight of a closed-form profile."""
    field = getattr(profile.evaluator, 'omega_field', None)
    expr = getattr(field, 'expr', None)
    if expr is None:
        raise ParameterError(
            f"manufactured solutions need a closed-form profile, got kind '{profile.kind}'")
    return expr


class ManufacturedSolution:
    """
    Exact solution and matching source of the linearized problem.

    Args:
        profile: Closed-form density profile
        kappa: Regularization parameter
        expr: X*(x, t) as a sympy expression or string; must vanish at x = 0, 1

    Example:
        >>> ms = ManufacturedSolution(make_profile('parabolic'), kappa=0.1)
        >>> ms.error(n_modes=32, T=0.5, dt=0.0125) < 1e-4
        True
    """

    def __init__(self, profile: DensityProfile, kappa: float,
                 expr: Union[str, sp.Expr] = DEFAULT_SOLUTION):
        if not kappa > 0:
            raise ParameterError(f"kappa must be positive, got {kappa}")
        x, t = X_SYMBOL, T_SYMBOL
        self.profile = profile
        self.kappa = float(kappa)
        self.X_expr = sp.sympify(expr, locals={'x': x, 't': t}) if isinstance(expr, str) else expr
        omega = weight_expression(profile)
        self.source_expr = (sp.diff(self.X_expr, t) / omega
                            - self.kappa * sp.diff(self.X_expr, x, 2)
                            + self.kappa * sp.diff(omega, x, 2) / omega * self.X_expr)
        self._exact = sp.lambdify((x, t), self.X_expr, 'numpy')
        self._source = sp.lambdify((x, t), self.source_expr, 'numpy')
        boundary = [float(self.X_expr.subs({x: edge, t: 0})) for edge in (0, 1)]
        if max(abs(b) for b in boundary) > 1e-14:
            raise ParameterError(f"manufactured X* must vanish at x = 0 and 1, got {boundary}")

    def exact(self, x, t: float) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(self._exact(x, t), dtype=float), x.shape).copy()

    def source(self, x, t: float) -> np.ndarray:
        """G*(x, t) at interior points."""
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.asarray(self._source(x, t), dtype=float), x.shape).copy()

    def problem(self, n_modes: int, T: float, dt: float, quadrature_factor: int = 4) -> LinearProblem:
        basis = build_basis(n_modes, quadrature_factor)
        return LinearProblem(
            profile=self.profile,
            force=compute_force(self.profile),
            geometry=FrozenGeometry.identity(time_grid(T, dt), basis.nodes),
            kappa=self.kappa,
            basis=basis,
            source=self.source,
        )

    def solve(self, n_modes: int, T: float, dt: float, **solver_options) -> XSolution:
        problem = self.problem(n_modes, T, dt)
        X0 = project(self.exact(problem.basis.nodes, 0.0), problem.basis)
        return LinearizedSolver(problem, **solver_options).solve(X0, T, dt)

    def error(self, n_modes: int, T: float, dt: float, solution: Optional[XSolution] = None) -> float:
        """L^2 error of the Galerkin solution against X* at t = T."""
        solution = solution or self.solve(n_modes, T, dt)
        basis = solution.basis
        numeric = basis.modes @ solution.coefficients[-1]
        exact = self.exact(basis.nodes, float(solution.times[-1]))
        return float(np.sqrt(basis.weights @ (numeric - exact) ** 2))
