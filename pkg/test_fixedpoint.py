"""
Fixed-Point Iteration Testing
Tests: flow-map integration, admissibility, contraction statistics, Picard iteration
"""

import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import (
    FixedPointConfig,
    FrozenGeometryError,
    InsufficientHistoryError,
    ParameterError,
)
from continuation import Simulation
from fixedpoint import (
    FixedPointSolver,
    contraction_rate,
    integrate_geometry,
    residual_norm,
    update_geometry,
)


def constant_jets(times, nodes, v, v_x=0.0):
    """Velocity jets (v, v', v'') constant in time."""
    frame = np.stack([np.broadcast_to(v, nodes.shape), np.full(nodes.shape, v_x), np.zeros(nodes.shape)])
    return np.stack([frame for _ in times])


@pytest.fixture
def small_config():
    return FixedPointConfig(T=0.02, dt=1e-3, n_modes=12, kappa=1e-2)


@pytest.fixture
def solver(parabolic, at_rest, parabolic_force, small_config):
    return FixedPointSolver(parabolic, at_rest, parabolic_force, small_config)


class TestGeometry:
    def test_at_rest_is_identity(self):
        times, nodes = np.linspace(0.0, 0.1, 11), np.linspace(0.0, 1.0, 9)
        geom = integrate_geometry(times, nodes, constant_jets(times, nodes, 0.0))
        assert np.all(geom.eta == nodes[None, :])
        assert np.all(geom.eta_x == 1.0)

    def test_translation(self):
        times, nodes = np.linspace(0.0, 0.1, 11), np.linspace(0.0, 1.0, 9)
        geom = integrate_geometry(times, nodes, constant_jets(times, nodes, 1.0))
        assert np.allclose(geom.eta[-1], nodes + 0.1)
        assert np.all(geom.eta_x == 1.0)

    def test_stretching_violation_time(self):
        nodes = np.linspace(0.0, 1.0, 9)
        times = np.linspace(0.0, 0.6, 61)
        jets = constant_jets(times, nodes, nodes, v_x=1.0)
        with pytest.raises(FrozenGeometryError) as info:
            update_geometry(jets, 0.6, 0.01, nodes=nodes)
        assert info.value.first_violation_time == pytest.approx(0.5, abs=1e-9)

    def test_admissible_stretching(self):
        nodes = np.linspace(0.0, 1.0, 9)
        times = np.linspace(0.0, 0.4, 41)
        geom = update_geometry(constant_jets(times, nodes, nodes, v_x=1.0), 0.4, 0.01, nodes=nodes)
        assert geom.eta_x[-1] == pytest.approx(np.full(9, 1.4))

    def test_shape_mismatch(self):
        nodes = np.linspace(0.0, 1.0, 9)
        with pytest.raises(ParameterError):
            integrate_geometry(np.linspace(0.0, 0.1, 11), nodes, np.zeros((11, 2, 9)))
        with pytest.raises(ParameterError):
            update_geometry(np.zeros((11, 3, 9)), 0.1, 0.01)


class TestContractionRate:
    def test_geometric_sequence(self):
        stats = contraction_rate([1.0, 0.5, 0.25])
        assert stats.ratios == [0.5, 0.5]
        assert stats.max_ratio == 0.5
        assert stats.geometric_mean == pytest.approx(0.5)
        assert stats.contractive

    def test_growing_sequence(self):
        stats = contraction_rate([1.0, 2.0, 4.0, 8.0])
        assert stats.max_ratio == 2.0
        assert not stats.contractive

    def test_exact_convergence(self):
        stats = contraction_rate([1e-3, 0.0, 0.0])
        assert stats.ratios == [0.0, 0.0]
        assert stats.geometric_mean == 0.0

    def test_needs_three_residuals(self):
        with pytest.raises(InsufficientHistoryError):
            contraction_rate([1.0, 0.5])


class TestFixedPointConfig:
    def test_rejects_bad_values(self):
        with pytest.raises(ParameterError):
            FixedPointConfig(T=0.01, dt=0.1, n_modes=8, kappa=0.1)
        with pytest.raises(ParameterError):
            FixedPointConfig(T=0.1, dt=0.01, n_modes=0, kappa=0.1)
        with pytest.raises(ParameterError):
            FixedPointConfig(T=0.1, dt=0.01, n_modes=8, kappa=0.0)

    def test_steps(self, small_config):
        assert small_config.n_steps == 20


class TestPicard:
    def test_initial_iterate_is_constant(self, solver):
        initial = solver.initial_iterate()
        assert np.all(initial.coefficients == initial.coefficients[0])
        assert np.allclose(initial.nodal_velocity(), 0.0, atol=1e-12)

    def test_step_is_deterministic(self, solver):
        initial = solver.initial_iterate()
        a = solver.picard_step(initial)
        b = solver.picard_step(initial)
        assert np.array_equal(a.coefficients, b.coefficients)
        assert np.array_equal(a.coefficients[0], solver.X0.coefficients)

    def test_infinite_tolerance_stops_after_one_step(self, parabolic, at_rest, parabolic_force):
        config = FixedPointConfig(T=0.02, dt=1e-3, n_modes=12, kappa=1e-2, tol=float('inf'))
        _, report = FixedPointSolver(parabolic, at_rest, parabolic_force, config).iterate()
        assert report.converged
        assert report.iterations == 1

    def test_iteration_converges(self, solver):
        trajectory, report = solver.iterate()
        assert report.converged
        assert report.residuals[-1] <= 1e-8
        assert all(r < 1.0 for r in report.ratios)
        assert report.within_bound is None
        assert solver.fixed_point_residual(trajectory) <= 1e-7

    def test_admissible_set_membership(self, parabolic, at_rest, parabolic_force):
        config = FixedPointConfig(T=0.02, dt=1e-3, n_modes=12, kappa=1e-2, M_bound=1e6)
        _, report = FixedPointSolver(parabolic, at_rest, parabolic_force, config).iterate()
        assert report.within_bound is True

    def test_returned_iterate_geometry_is_checked(self, parabolic, at_rest, parabolic_force):
        # one step from rest gives eta' ~ 1 + 2t^2, past 3/2 before t = 1
        config = FixedPointConfig(T=1.0, dt=1e-2, n_modes=8, kappa=1e-2, max_iters=1)
        with pytest.raises(FrozenGeometryError) as info:
            FixedPointSolver(parabolic, at_rest, parabolic_force, config).iterate()
        assert 0.0 < info.value.first_violation_time <= 1.0

    def test_uniqueness(self, solver):
        assert solver.uniqueness_gap(0.1) < 1e-6

    def test_residual_norm_is_symmetric(self, solver):
        initial = solver.initial_iterate()
        step = solver.picard_step(initial)
        assert residual_norm(step, initial) == residual_norm(initial, step) > 0


class TestBaselineContraction:
    def test_converges_within_twenty_iterations(self, baseline_result):
        report = baseline_result.report
        assert report.converged
        assert report.iterations <= 20
        assert report.residuals[-1] <= baseline_result.config.fp_tol
        assert report.ratios and all(r < 1.0 for r in report.ratios)

    @pytest.mark.slow
    def test_halving_horizon_reduces_ratio(self, baseline_result):
        config = replace(baseline_result.config, T_lagrangian=baseline_result.config.T_lagrangian / 2)
        halved = Simulation(config).run().report
        assert halved.converged
        assert halved.max_ratio < 0.5 * baseline_result.report.max_ratio
