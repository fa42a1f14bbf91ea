"""
Energy Analyzer Testing
Tests: energy bound monitor, energy functional, physical invariants
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import (
    ENERGY_TERM_LABELS,
    EnergySnapshot,
    FixedPointConfig,
    FrozenGeometryError,
    InsufficientHistoryError,
    ParameterError,
    RunConfig,
)
from analyzers import (
    EnergyAnalyzer,
    boundary_motion,
    check_bound,
    invariants,
    momentum,
    required_levels,
    time_derivatives,
)
from continuation import Simulation
from fixedpoint import FixedPointSolver
from spectral import project


def history(times, energies):
    return [EnergySnapshot.from_terms(t, [e]) for t, e in zip(times, energies)]


def make_solver(parabolic, at_rest, parabolic_force, T=0.01, n_modes=12):
    config = FixedPointConfig(T=T, dt=1e-3, n_modes=n_modes, kappa=1e-2)
    return FixedPointSolver(parabolic, at_rest, parabolic_force, config)


@pytest.fixture(scope='module')
def analyzer():
    return EnergyAnalyzer(n_nodes=64)


class TestBoundCheck:
    def test_constant_energy_passes(self):
        verdict = check_bound(history([0.0, 0.01], [1.0, 1.0]), 1.0)
        assert verdict.passed
        assert verdict.threshold == 2.0
        assert verdict.first_violation_time is None

    def test_first_violation(self):
        verdict = check_bound(history([0.0, 0.1, 0.2, 0.3], [1.0, 1.5, 2.5, 3.0]), 1.0)
        assert not verdict.passed
        assert verdict.first_violation_time == 0.2
        assert verdict.sup_energy == 3.0

    def test_threshold_is_inclusive(self):
        assert check_bound(history([0.0, 0.1], [1.0, 2.0]), 1.0).passed

    def test_fitted_constant(self):
        times = np.array([0.0, 0.1, 0.2])
        sup = 1.0 / 0.9
        energies = 1.0 + 0.5 * times * sup
        verdict = check_bound(history(times, energies), 1.0)
        assert verdict.fitted_constant == pytest.approx(0.5, rel=1e-12)

    def test_invalid_input(self):
        with pytest.raises(InsufficientHistoryError):
            check_bound([], 1.0)
        with pytest.raises(ParameterError):
            check_bound(history([0.0], [1.0]), -1.0)


class TestTimeDerivatives:
    def test_linear_history(self):
        times = np.linspace(0.0, 0.01, 11)
        coefficients = np.outer(times, [1.0, -2.0])
        derivatives = time_derivatives(coefficients, times)
        assert np.allclose(derivatives[1], [1.0, -2.0])
        assert np.allclose(derivatives[2], 0.0, atol=1e-9)

    def test_missing_orders(self):
        times = np.linspace(0.0, 0.004, 5)
        derivatives = time_derivatives(np.zeros((5, 3)), times)
        assert derivatives[3] is not None
        assert derivatives[4] is None
        assert [required_levels(s) for s in range(5)] == [1, 3, 4, 5, 6]


class TestEnergyFunctional:
    def test_at_rest_has_zero_energy(self, analyzer, parabolic, at_rest, parabolic_force):
        trajectory = make_solver(parabolic, at_rest, parabolic_force).initial_iterate()
        snapshots = analyzer.energy_history(trajectory)
        assert len(snapshots) == 11
        assert all(s.total == 0.0 and not s.partial for s in snapshots)
        assert len(snapshots[0].terms) == len(ENERGY_TERM_LABELS) == 12

    def test_quadratic_scaling(self, analyzer, parabolic, at_rest, parabolic_force):
        solver = make_solver(parabolic, at_rest, parabolic_force)
        trajectory = solver.picard_step(solver.initial_iterate())
        doubled = trajectory.with_coefficients(2.0 * trajectory.coefficients)
        t = trajectory.times[5]
        single = analyzer.eval_energy(trajectory, None, t)
        assert single.total > 0
        assert analyzer.eval_energy(doubled, None, t).total == pytest.approx(4.0 * single.total, rel=1e-10)

    def test_short_history_is_partial(self, analyzer, parabolic, at_rest, parabolic_force):
        trajectory = make_solver(parabolic, at_rest, parabolic_force, T=0.002).initial_iterate()
        snapshot = analyzer.eval_energy(trajectory, None, trajectory.times[1])
        assert snapshot.partial
        assert 'dt2v_H1' in snapshot.omitted
        assert snapshot.term('v_H2') == 0.0

    def test_unknown_time(self, analyzer, parabolic, at_rest, parabolic_force):
        trajectory = make_solver(parabolic, at_rest, parabolic_force).initial_iterate()
        with pytest.raises(ParameterError):
            analyzer.eval_energy(trajectory, None, 0.00123)


class TestInvariants:
    def test_uniform_motion_momentum(self, parabolic, at_rest, parabolic_force):
        solver = make_solver(parabolic, at_rest, parabolic_force, n_modes=24)
        X = project(solver.problem.omega, solver.basis).coefficients
        trajectory = solver.initial_iterate().with_coefficients(np.tile(X, (len(solver.times), 1)))
        assert momentum(trajectory, 0.0) == pytest.approx(1 / 6, rel=1e-3)

    def test_at_rest(self, parabolic, at_rest, parabolic_force):
        trajectory = make_solver(parabolic, at_rest, parabolic_force).initial_iterate()
        report = invariants(trajectory, trajectory.times[-1])
        assert report.momentum == 0.0
        assert (report.a, report.b) == (0.0, 1.0)
        assert report.mass == pytest.approx(1 / 6, abs=1e-12)
        assert report.mass_residual == 0.0
        assert report.slope_left == pytest.approx(2.0)
        assert report.slope_right == pytest.approx(-2.0)


class TestBaselineEnergy:
    def test_bound_holds(self, baseline_result):
        assert baseline_result.status == 'ok'
        assert baseline_result.verdict.passed
        assert baseline_result.E0 > 0
        assert baseline_result.E_max <= 2.0 * baseline_result.E0 * (1 + 1e-12)
        assert baseline_result.T_valid == pytest.approx(baseline_result.config.T_lagrangian)

    def test_symmetric_momentum(self, baseline_result):
        drift = baseline_result.summary()['momentum_drift']
        assert abs(baseline_result.invariants[0].momentum) < 1e-10
        assert drift < 1e-8

    def test_boundary_motion(self, baseline_result):
        eta, eta_x = boundary_motion(baseline_result.trajectory)
        assert eta[0].tolist() == [0.0, 1.0]
        assert eta_x[0].tolist() == [1.0, 1.0]
        assert np.allclose(eta[:, 0] + eta[:, 1], 1.0, atol=1e-8)

    def test_slope_ratios_start_at_one(self, baseline_result):
        ratios = baseline_result.slope_ratios()
        assert ratios[0].tolist() == [1.0, 1.0]
        assert np.all(ratios > 0)

    def test_monitor_flags_first_crossing(self, baseline_result):
        energies = [s.total for s in baseline_result.energy]
        M0 = 0.5 * max(energies) * (1 - 1e-6)
        expected = next(s.t for s in baseline_result.energy if s.total > 2 * M0 * (1 + 1e-12))
        verdict = check_bound(baseline_result.energy, M0)
        assert not verdict.passed
        assert verdict.first_violation_time == expected
        assert verdict.sup_energy == max(energies)


@pytest.mark.slow
class TestOverlongRun:
    def test_geometry_violation_is_reported(self):
        # at rest the flow map stretches like 1 + 2t^2 and leaves the admissible set before t = 1
        config = RunConfig(T_lagrangian=1.0, dt=1e-2, n_modes=8)
        assert config.validate() == []
        with pytest.raises(FrozenGeometryError) as info:
            Simulation(config).run()
        assert 0.0 < info.value.first_violation_time < 1.0


def test_analyzer_from_config(tmp_path):
    settings = tmp_path / 'config.yaml'
    settings.write_text('numerics:\n  energy_nodes: 40\n  bound_rtol: 1.0e-9\n')
    analyzer = EnergyAnalyzer.from_config(str(settings))
    assert analyzer.n_nodes == 40
    assert analyzer.bound_rtol == 1e-9
