"""
Weighted Galerkin Solver

Galerkin discretization of the linearized problem in the sine basis,

    M c' + kappa A c = g(t),
    M = (e_i/omega0, e_j),  A = (e_i', e_j') + ((omega0''/omega0) e_i, e_j),

integrated by the implicit midpoint rule. A is positive semidefinite since
int X'^2 + (omega0''/omega0) X^2 = int omega0^2 v'^2 for X = omega0 v.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy import linalg
from scipy.integrate import cumulative_trapezoid

from models.errors import SolverError, StepRejectedError, ParameterError
from models.reports import SolverDiagnostics
from spectral.basis import Basis, SpectralField, project
from .problem import LinearProblem

logger = logging.getLogger(__name__)


@dataclass
class XSolution:
    """
    Time series of the weighted unknown X = omega0 v.

    Attributes:
        times: Time grid
        coefficients: Sine coefficients, shape (n_times, n_modes)
        basis: Basis of the coefficients
        mass_energy: int X^2 / omega0 at every time (c^T M c)
        dissipation: kappa int_0^t ||X||_{H^1}^2 at every time
        diagnostics: Implicit solver statistics
    """

    times: np.ndarray
    coefficients: np.ndarray
    basis: Basis = field(repr=False)
    mass_energy: np.ndarray = field(default=None, repr=False)
    dissipation: np.ndarray = field(default=None, repr=False)
    diagnostics: SolverDiagnostics = field(default_factory=SolverDiagnostics)

    def snapshot(self, i: int) -> SpectralField:
        """X at the i-th stored time as a SpectralField."""
        return SpectralField(self.coefficients[i], self.basis)

    @property
    def final(self) -> SpectralField:
        return self.snapshot(-1)

    def gronwall_bound_holds(self, kappa: float, reaction_sup: float, rtol: float = 1e-10) -> bool:
        """
        Check int X^2(t)/omega0 <= exp(2 kappa sup|omega0''| t) int X^2(0)/omega0.

        Valid for a zero source.
        """
        bound = np.exp(2.0 * kappa * reaction_sup * self.times) * self.mass_energy[0]
        return bool(np.all(self.mass_energy <= bound * (1.0 + rtol) + 1e-300))

    def to_dict(self) -> Dict:
        return {
            'n_times': int(len(self.times)),
            'n_modes': int(self.basis.n_modes),
            'T': float(self.times[-1]),
            'final_mass_energy': float(self.mass_energy[-1]) if self.mass_energy is not None else None,
            'diagnostics': self.diagnostics.to_dict(),
        }


def mass_matrix(basis: Basis, omega: np.ndarray) -> np.ndarray:
    """(e_i/omega0, e_j) by quadrature at interior nodes."""
    E = basis.modes
    return E.T @ ((basis.weights / omega)[:, None] * E)


def reaction_matrix(basis: Basis, omega: np.ndarray, omega_xx: np.ndarray) -> np.ndarray:
    """((omega0''/omega0) e_i, e_j); the integrand stays bounded at the nodes."""
    E = basis.modes
    return E.T @ ((basis.weights * omega_xx / omega)[:, None] * E)


def time_grid(T: float, dt: float) -> np.ndarray:
    """Uniform grid from 0 to T with round(T/dt) steps."""
    n_steps = max(1, int(round(T / dt)))
    return np.linspace(0.0, T, n_steps + 1)


class LinearizedSolver:
    """
    Implicit-midpoint Galerkin integrator for one LinearProblem.

    Args:
        problem: The linear problem
        refine_steps: Iterative-refinement sweeps per linear solve
        residual_tol: Normwise backward-error tolerance per step
        max_split_depth: How often a rejected step may be halved

    Example:
        >>> solver = LinearizedSolver(problem)
        >>> solution = solver.solve(project(lambda x: 0.0 * x, problem.basis), T=0.05, dt=1e-3)
    """

    def __init__(self, problem: LinearProblem, refine_steps: int = 2,
                 residual_tol: float = 1e-10, max_split_depth: int = 2):
        self.problem = problem
        self.refine_steps = int(refine_steps)
        self.residual_tol = float(residual_tol)
        self.max_split_depth = int(max_split_depth)
        basis = problem.basis
        self.M = mass_matrix(basis, problem.omega)
        self.R = reaction_matrix(basis, problem.omega, problem.omega_xx)
        self.K = np.diag(basis.eigenvalues)
        self.A = self.K + self.R
        self._check_mass_matrix()
        self._factors: Dict[float, tuple] = {}

    def _check_mass_matrix(self) -> None:
        if not np.all(np.isfinite(self.M)):
            raise SolverError("mass matrix has non-finite entries; the weight vanishes at a node")
        smallest = float(linalg.eigvalsh(self.M)[0])
        if not smallest > 0.0:
            raise SolverError(
                f"mass matrix is not positive definite (smallest eigenvalue {smallest:.3e}); "
                f"increase the quadrature factor")

    def _factor(self, h: float):
        key = float(h)
        if key not in self._factors:
            lhs = self.M + 0.5 * h * self.problem.kappa * self.A
            rhs_op = self.M - 0.5 * h * self.problem.kappa * self.A
            try:
                lu = linalg.lu_factor(lhs, check_finite=True)
            except (ValueError, linalg.LinAlgError) as e:
                raise SolverError(f"cannot factor the implicit-midpoint operator: {e}") from e
            self._factors[key] = (lhs, rhs_op, lu)
        return self._factors[key]

    def _solve_step(self, c: np.ndarray, t: float, h: float, diagnostics: SolverDiagnostics,
                    depth: int = 0) -> np.ndarray:
        # linspace steps differ in the last bits; one factorization per nominal step
        h = float(f"{h:.12g}")
        lhs, rhs_op, lu = self._factor(h)
        rhs = rhs_op @ c + h * self.problem.load(t + 0.5 * h)
        x = linalg.lu_solve(lu, rhs)
        scale = np.linalg.norm(lhs, np.inf) * np.linalg.norm(x, np.inf) + np.linalg.norm(rhs, np.inf)
        used = 0
        for used in range(self.refine_steps + 1):
            residual = rhs - lhs @ x
            error = float(np.linalg.norm(residual, np.inf) / scale) if scale > 0 else 0.0
            if error <= self.residual_tol or used == self.refine_steps:
                break
            x = x + linalg.lu_solve(lu, residual)
        if np.all(np.isfinite(x)) and error <= self.residual_tol:
            diagnostics.refinements.append(used)
            diagnostics.residuals.append(error)
            return x
        if depth >= self.max_split_depth:
            raise StepRejectedError(
                f"implicit step at t={t:.6g} stagnated at backward error {error:.3e} "
                f"after {depth} halvings")
        diagnostics.rejections += 1
        logger.debug(f"Rejected step at t={t:.6g} (error {error:.3e}); splitting")
        half = 0.5 * h
        mid = self._solve_step(c, t, half, diagnostics, depth + 1)
        return self._solve_step(mid, t + half, half, diagnostics, depth + 1)

    def solve(self, X0: SpectralField, T: float, dt: float,
              times: Optional[np.ndarray] = None) -> XSolution:
        """
        Integrate from X0 over [0, T].

        Args:
            X0: Initial weighted unknown (projection of omega0 u0)
            T: Horizon
            dt: Time step
            times: Optional explicit grid overriding (T, dt)

        Returns:
            XSolution with coefficients, energy history and diagnostics
        """
        if times is None:
            if not (T > 0 and dt > 0):
                raise ParameterError(f"need T > 0 and dt > 0, got T={T}, dt={dt}")
            times = time_grid(T, dt)
        times = np.asarray(times, dtype=float)
        basis = self.problem.basis
        coefficients = np.empty((len(times), basis.n_modes))
        coefficients[0] = X0.coefficients
        diagnostics = SolverDiagnostics()
        for n in range(len(times) - 1):
            h = times[n + 1] - times[n]
            coefficients[n + 1] = self._solve_step(coefficients[n], times[n], h, diagnostics)
            diagnostics.steps += 1

        mass_energy = np.einsum('ti,ij,tj->t', coefficients, self.M, coefficients)
        h1 = np.sum((1.0 + basis.eigenvalues) * coefficients ** 2, axis=1)
        dissipation = self.problem.kappa * cumulative_trapezoid(h1, times, initial=0.0)
        logger.debug(f"Galerkin solve: {diagnostics.steps} steps, "
                     f"{diagnostics.rejections} rejections, max backward error {diagnostics.max_residual:.2e}")
        return XSolution(times=times, coefficients=coefficients, basis=basis,
                         mass_energy=mass_energy, dissipation=dissipation, diagnostics=diagnostics)


def initial_X(problem: LinearProblem, u0) -> SpectralField:
    """Projection of omega0 u0 onto the basis."""
    nodes = problem.basis.nodes
    return project(problem.omega * np.asarray(u0.evaluate(nodes, 0), dtype=float), problem.basis)


def solve_X(problem: LinearProblem, X0: SpectralField, T: float, dt: float, **solver_options) -> XSolution:
    """Solve the linearized problem from X0 on [0, T] with step dt."""
    return LinearizedSolver(problem, **solver_options).solve(X0, T, dt)


def weighted_gap(a: XSolution, b: XSolution, M: np.ndarray) -> float:
    """
    max_t int (X_a - X_b)^2 / omega0 between two solutions on one grid.

    Used for the uniqueness check: identical inputs give 0, inputs
    differing by delta give a gap of order delta^2.
    """
    if a.coefficients.shape != b.coefficients.shape:
        raise ValueError("solutions live on different grids")
    diff = a.coefficients - b.coefficients
    return float(np.max(np.einsum('ti,ij,tj->t', diff, M, diff)))


def history_table(solution: XSolution) -> List[Dict[str, float]]:
    """Rows (t, mass_energy, dissipation) of the discrete energy budget."""
    return [
        {'t': float(t), 'mass_energy': float(e), 'dissipation': float(d)}
        for t, e, d in zip(solution.times, solution.mass_energy, solution.dissipation)
    ]
