"""
Picard Iteration

Fixed-point map vbar -> v of the nonlinear kappa-problem: freeze the flow
map of vbar, solve the linear problem for X = omega0 v, recover v. The
iteration starts from the constant-in-time extension of u0 and measures
successive differences in L^2(0, T; H^1) of omega0 (v_{n+1} - v_n).
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

from models.errors import FixedPointDivergenceError, InsufficientHistoryError
from models.force import ForceField
from models.geometry import FrozenGeometry
from models.profile import DensityProfile, VelocityProfile
from models.reports import ContractionStats, ConvergenceReport, SolverDiagnostics
from models.run_config import FixedPointConfig
from models.weight import VacuumWeight
from profiles.evaluators import omega_field
from spectral.basis import build_basis, project
from spectral.hardy import default_theta_nodes
from linearized.galerkin import LinearizedSolver, initial_X, time_grid
from linearized.problem import LinearProblem
from linearized.recovery import VelocityRecovery
from .geometry import check_geometry, update_geometry
from .trajectory import Trajectory

logger = logging.getLogger(__name__)


@dataclass
class IterationState:
    """
    Bookkeeping of the running iteration.

    Attributes:
        iteration: Index n of the current iterate
        trajectory: v^(n)
        geometry: Flow map frozen from v^(n-1) (None before the first step)
        residuals: r_1, ..., r_n
    """

    iteration: int
    trajectory: Trajectory
    geometry: Optional[FrozenGeometry] = None
    residuals: List[float] = field(default_factory=list)


def residual_norm(a: Trajectory, b: Trajectory) -> float:
    """
    ||X_a - X_b||_{L^2(0,T;H^1)} from sine coefficients.

    Uses ||X||_{H^1}^2 = sum (1 + (i pi)^2) c_i^2 and the trapezoidal rule in time.
    """
    diff = a.coefficients - b.coefficients
    h1 = np.sum((1.0 + a.basis.eigenvalues) * diff ** 2, axis=1)
    return float(math.sqrt(max(trapezoid(h1, a.times), 0.0)))


def contraction_rate(history: Sequence[float]) -> ContractionStats:
    """
    Statistics of the ratios r_{n+1} / r_n.

    Args:
        history: Residuals r_1, r_2, ... (at least three)

    Returns:
        ContractionStats; a zero residual followed by anything counts as ratio 0

    Raises:
        InsufficientHistoryError: Fewer than three residuals

    Example:
        >>> contraction_rate([1.0, 0.5, 0.25]).max_ratio
        0.5
    """
    residuals = [float(r) for r in history]
    if len(residuals) < 3:
        raise InsufficientHistoryError(
            f"contraction statistics need at least 3 residuals, got {len(residuals)}")
    ratios = [b / a if a > 0 else 0.0 for a, b in zip(residuals, residuals[1:])]
    if min(ratios) > 0:
        geometric_mean = float(np.exp(np.mean(np.log(ratios))))
    else:
        geometric_mean = 0.0
    return ContractionStats(
        ratios=ratios,
        max_ratio=float(max(ratios)),
        geometric_mean=geometric_mean,
        contractive=all(r < 1.0 for r in ratios),
    )


class FixedPointSolver:
    """
    Picard iteration for one (profile, velocity, force, kappa) configuration.

    The Galerkin matrices do not depend on the frozen geometry, so one
    LinearizedSolver (and its factorizations) serves every iteration.

    Args:
        profile: Density profile (mollified)
        velocity: Initial velocity u0 (mollified)
        force: Self-gravity force
        config: Iteration settings
        weight: Vacuum weight carrying the gamma coefficients
        refine_steps: Iterative-refinement sweeps of the inner solver
        residual_tol: Backward-error tolerance of the inner solver

    Example:
        >>> solver = FixedPointSolver(p, u0, force, FixedPointConfig(T=0.05, dt=1e-3, n_modes=24, kappa=1e-2))
        >>> trajectory, report = solver.iterate()
        >>> report.converged
        True
    """

    def __init__(self, profile: DensityProfile, velocity: VelocityProfile, force: ForceField,
                 config: FixedPointConfig, weight: Optional[VacuumWeight] = None,
                 refine_steps: int = 2, residual_tol: float = 1e-10):
        self.profile = profile
        self.velocity = velocity
        self.force = force
        self.config = config
        self.weight = weight
        self.basis = build_basis(config.n_modes, config.quadrature_factor)
        self.times = time_grid(config.T, config.dt)
        self.weight_field = weight if weight is not None else omega_field(profile.evaluator)
        points = np.concatenate([[0.0], self.basis.nodes, [1.0]])
        n_theta = max(config.hardy_theta_nodes, default_theta_nodes(config.n_modes))
        self.recovery = VelocityRecovery(self.basis, self.weight_field, points, max_order=2, n_theta=n_theta)
        self.problem = LinearProblem(
            profile=profile,
            force=force,
            geometry=FrozenGeometry.identity(self.times, self.basis.nodes),
            kappa=config.kappa,
            basis=self.basis,
            weight=weight,
        )
        self.linear_solver = LinearizedSolver(self.problem, refine_steps=refine_steps,
                                              residual_tol=residual_tol)
        self.X0 = initial_X(self.problem, velocity)
        self.state: Optional[IterationState] = None

    def _trajectory(self, coefficients: np.ndarray) -> Trajectory:
        return Trajectory(self.times, coefficients, self.basis, self.recovery,
                          self.weight_field, self.profile)

    def initial_iterate(self) -> Trajectory:
        """v^(0)(x, t) = u0(x), represented by constant X coefficients."""
        return self._trajectory(np.tile(self.X0.coefficients, (len(self.times), 1)))

    def perturbed_iterate(self, delta: float) -> Trajectory:
        """
        Initial iterate plus delta * t * P(omega0 sin(pi x)).

        The perturbation vanishes at t = 0, so v(., 0) = u0 is kept.
        """
        nodes = self.basis.nodes
        bump = project(self.problem.omega * np.sin(np.pi * nodes), self.basis).coefficients
        base = self.initial_iterate().coefficients
        return self._trajectory(base + delta * self.times[:, None] * bump[None, :])

    def picard_step(self, vbar: Trajectory,
                    diagnostics: Optional[List[SolverDiagnostics]] = None) -> Trajectory:
        """
        One application of the fixed-point map.

        Args:
            vbar: Current iterate
            diagnostics: Optional list collecting the inner solver statistics

        Returns:
            The next iterate; its first coefficient row is exactly that of u0

        Raises:
            FrozenGeometryError: The flow map of vbar is not admissible
        """
        geometry = update_geometry(vbar, self.config.T, self.config.dt)
        self.problem.geometry = geometry
        solution = self.linear_solver.solve(self.X0, self.config.T, self.config.dt, times=self.times)
        if diagnostics is not None:
            diagnostics.append(solution.diagnostics)
        return self._trajectory(solution.coefficients)

    def _within_bound(self, trajectory: Trajectory) -> Optional[bool]:
        if self.config.M_bound is None:
            return None
        h1 = np.sum((1.0 + self.basis.eigenvalues) * trajectory.coefficients ** 2, axis=1)
        return bool(np.max(h1) <= self.config.M_bound)

    def iterate(self, initial: Optional[Trajectory] = None) -> Tuple[Trajectory, ConvergenceReport]:
        """
        Run the Picard iteration until the residual drops below tol.

        Args:
            initial: Starting iterate (defaults to the constant extension of u0)

        Returns:
            Tuple of (last iterate, ConvergenceReport). A report with
            converged=False means max_iters was reached.

        Raises:
            FixedPointDivergenceError: Residual ratios >= 1 for
                divergence_patience consecutive steps, or a non-finite residual
            FrozenGeometryError: An iterate left the admissible geometry
        """
        cfg = self.config
        current = initial if initial is not None else self.initial_iterate()
        self.state = IterationState(iteration=0, trajectory=current)
        residuals: List[float] = []
        ratios: List[float] = []
        inner: List[SolverDiagnostics] = []
        strikes = 0
        converged = False
        start = time.perf_counter()

        def report(message: str) -> ConvergenceReport:
            return ConvergenceReport(
                converged=converged,
                iterations=len(residuals),
                residuals=list(residuals),
                ratios=list(ratios),
                tol=cfg.tol,
                T=cfg.T,
                wall_time=time.perf_counter() - start,
                inner=inner,
                within_bound=self._within_bound(current),
                message=message,
            )

        for n in range(1, cfg.max_iters + 1):
            new = self.picard_step(current, inner)
            r = residual_norm(new, current)
            if not math.isfinite(r):
                raise FixedPointDivergenceError(
                    f"non-finite residual at iteration {n}; reduce T", report(f"non-finite residual at iteration {n}"))
            if residuals:
                ratio = r / residuals[-1] if residuals[-1] > 0 else 0.0
                ratios.append(ratio)
                strikes = strikes + 1 if ratio >= 1.0 else 0
            residuals.append(r)
            self.state = IterationState(n, new, self.problem.geometry, list(residuals))
            current = new
            logger.debug(f"Picard iteration {n}: residual {r:.3e}")
            if r <= cfg.tol:
                converged = True
                break
            if strikes >= cfg.divergence_patience:
                message = (f"residual ratio >= 1 for {strikes} consecutive iterations "
                           f"(last {ratios[-1]:.3g}); reduce T below {cfg.T}")
                logger.error(f"✗ Picard iteration diverged: {message}")
                raise FixedPointDivergenceError(message, report(message))

        if converged:
            message = f"converged in {len(residuals)} iterations"
            logger.info(f"✓ Picard iteration {message} (kappa={cfg.kappa}, T={cfg.T})")
        else:
            message = f"no convergence after {cfg.max_iters} iterations (residual {residuals[-1]:.3e})"
            logger.warning(f"✗ Picard iteration: {message}")
        check_geometry(current.geometry())
        return current, report(message)

    def fixed_point_residual(self, trajectory: Trajectory) -> float:
        """Residual of one more Picard step from a (converged) trajectory."""
        return residual_norm(self.picard_step(trajectory), trajectory)

    def uniqueness_gap(self, delta: float = 0.1) -> float:
        """
        Distance between the limits started from two different iterates.

        Returns:
            residual_norm between the two converged trajectories
        """
        first, _ = self.iterate()
        second, _ = self.iterate(self.perturbed_iterate(delta))
        return residual_norm(first, second)


def iterate(profile: DensityProfile, velocity: VelocityProfile, force: ForceField,
            config: FixedPointConfig, weight: Optional[VacuumWeight] = None,
            **solver_options) -> Tuple[Trajectory, ConvergenceReport]:
    """Build a FixedPointSolver and run it from the constant extension of u0."""
    return FixedPointSolver(profile, velocity, force, config, weight, **solver_options).iterate()


def picard_step(vbar: Trajectory, solver: FixedPointSolver) -> Trajectory:
    """Apply the fixed-point map of solver to vbar."""
    return solver.picard_step(vbar)
