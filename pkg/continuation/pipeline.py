"""
Simulation Pipeline

One complete run: initial data -> mollification -> force -> weight ->
compatibility data -> Picard iteration -> energy and invariant histories.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from models.energy import BoundVerdict, EnergySnapshot, InvariantReport
from models.errors import ConfigError
from models.force import ForceField
from models.profile import DensityProfile, VelocityProfile
from models.reports import ConvergenceReport
from models.run_config import RunConfig
from models.weight import VacuumWeight
from profiles.builder import make_profile, make_velocity
from profiles.compatibility import CompatibilityData, compute_uk
from profiles.mollifier import mollify_density, mollify_velocity
from gravity.force import compute_force
from fixedpoint.picard import FixedPointSolver
from fixedpoint.trajectory import Trajectory
from analyzers.energy_analyzer import EnergyAnalyzer, invariant_history
from .gamma import direct_weight, gamma_transform

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BOUND_VIOLATION = 3
EXIT_DIVERGED = 4


def validity_horizon(history: List[EnergySnapshot], verdict: BoundVerdict) -> float:
    """Largest stored time up to which E <= 2 M0 holds at every snapshot."""
    if verdict.first_violation_time is None:
        return float(history[-1].t)
    valid = [s.t for s in history if s.t < verdict.first_violation_time]
    return float(valid[-1]) if valid else 0.0


@dataclass
class RunResult:
    """
    Everything one run produced.

    Attributes:
        config: Run configuration
        profile: Mollified density profile
        velocity: Mollified initial velocity
        force: Self-gravity force
        weight: Vacuum weight with the gamma coefficients
        compatibility: Fields u_0..u_K at t = 0
        trajectory: Converged (or last) Picard iterate
        report: Picard convergence report
        energy: Energy snapshots at every stored time
        verdict: Energy-bound verdict with M0 = E(0)
        invariants: Invariant reports at every stored time
        T_valid: Validity horizon of the energy bound
        wall_time: Seconds spent in run()
    """

    config: RunConfig
    profile: DensityProfile = field(repr=False)
    velocity: VelocityProfile = field(repr=False)
    force: ForceField = field(repr=False)
    weight: VacuumWeight = field(repr=False)
    compatibility: CompatibilityData = field(repr=False)
    trajectory: Trajectory = field(repr=False)
    report: ConvergenceReport
    energy: List[EnergySnapshot] = field(repr=False)
    verdict: BoundVerdict
    invariants: List[InvariantReport] = field(repr=False)
    T_valid: float
    wall_time: float = 0.0

    @property
    def status(self) -> str:
        if not self.report.converged:
            return 'diverged'
        if not self.verdict.passed:
            return 'bound_violation'
        return 'ok'

    @property
    def exit_code(self) -> int:
        return {'ok': EXIT_OK, 'bound_violation': EXIT_BOUND_VIOLATION}.get(self.status, EXIT_DIVERGED)

    @property
    def E0(self) -> float:
        return self.energy[0].total

    @property
    def E_max(self) -> float:
        return max(s.total for s in self.energy)

    def nodal_velocity(self) -> np.ndarray:
        return self.trajectory.nodal_velocity(0)

    def slope_ratios(self) -> np.ndarray:
        """Boundary c^2-slope over its initial value, shape (n_times, 2)."""
        slopes = np.array([[r.slope_left, r.slope_right] for r in self.invariants])
        return slopes / slopes[0]

    def summary(self) -> Dict[str, Any]:
        return {
            'status': self.status,
            'exit_code': self.exit_code,
            'kappa': self.config.kappa,
            'gamma': self.config.gamma,
            'iterations': self.report.iterations,
            'max_ratio': self.report.max_ratio,
            'E0': self.E0,
            'E_max': self.E_max,
            'T_valid': self.T_valid,
            'momentum_drift': float(max(abs(r.momentum - self.invariants[0].momentum) for r in self.invariants)),
            'mass_residual': float(max(r.mass_residual for r in self.invariants)),
            'wall_time': self.wall_time,
        }


class Simulation:
    """
    Builds the pieces of a run from a RunConfig and executes it.

    Args:
        config: Run configuration
        analyzer: EnergyAnalyzer (a default one is created when omitted)
        refine_steps: Iterative-refinement sweeps of the inner solver

    Example:
        >>> result = Simulation(RunConfig.from_file('baseline.json')).run()
        >>> result.status
        'ok'
    """

    def __init__(self, config: RunConfig, analyzer: Optional[EnergyAnalyzer] = None,
                 refine_steps: int = 2):
        findings = config.validate()
        if findings:
            raise ConfigError('; '.join(f.message for f in findings),
                              findings=[f.to_dict() for f in findings])
        self.config = config
        self.analyzer = analyzer or EnergyAnalyzer()
        self.refine_steps = refine_steps

    def initial_data(self):
        """Density, velocity, force, weight and compatibility data of the run."""
        cfg = self.config
        profile = make_profile(cfg.profile, {**cfg.profile_params, 'gamma': cfg.gamma})
        velocity = make_velocity(cfg.velocity, cfg.velocity_params)
        if cfg.mollify:
            profile = mollify_density(profile, cfg.kappa)
            velocity = mollify_velocity(velocity, cfg.kappa)
        force = compute_force(profile, cfg.gravity_constant)
        weight = direct_weight(profile) if cfg.formulation == 'density' else gamma_transform(profile)
        compatibility = compute_uk(profile, velocity, force, cfg.kappa, cfg.k_max, cfg.k_max)
        return profile, velocity, force, weight, compatibility

    def solver(self, profile, velocity, force, weight) -> FixedPointSolver:
        return FixedPointSolver(profile, velocity, force, self.config.fixed_point_config(),
                                weight=weight, refine_steps=self.refine_steps)

    def run(self) -> RunResult:
        """
        Execute the run.

        Raises:
            FixedPointDivergenceError: Residual ratios stopped contracting
            FrozenGeometryError: An iterate left the admissible geometry
            ProfileValidationError: Initial data is not a physical vacuum
        """
        cfg = self.config
        start = time.perf_counter()
        logger.info(f"Running {cfg.profile} profile, gamma={cfg.gamma}, kappa={cfg.kappa}, "
                    f"T={cfg.T_lagrangian}, n_modes={cfg.n_modes}, dt={cfg.dt}")
        profile, velocity, force, weight, compatibility = self.initial_data()
        trajectory, report = self.solver(profile, velocity, force, weight).iterate()

        energy = self.analyzer.energy_history(trajectory, compatibility)
        verdict = self.analyzer.check_bound(energy, energy[0].total)
        invariants = invariant_history(trajectory)
        result = RunResult(
            config=cfg,
            profile=profile,
            velocity=velocity,
            force=force,
            weight=weight,
            compatibility=compatibility,
            trajectory=trajectory,
            report=report,
            energy=energy,
            verdict=verdict,
            invariants=invariants,
            T_valid=validity_horizon(energy, verdict),
            wall_time=time.perf_counter() - start,
        )
        mark = '✓' if result.status == 'ok' else '✗'
        logger.info(f"{mark} Run finished: {result.status} after {report.iterations} iterations, "
                    f"T_valid={result.T_valid:.6g} ({result.wall_time:.2f}s)")
        return result


def run_simulation(config: RunConfig, **options) -> RunResult:
    """Convenience wrapper around Simulation(config).run()."""
    return Simulation(config, **options).run()
