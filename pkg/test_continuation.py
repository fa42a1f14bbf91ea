"""
Continuation Testing
Tests: general gamma, manufactured-solution convergence, run configs, kappa sweeps
"""

import json
import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import (
    BoundVerdict,
    ConfigError,
    ConvergenceRow,
    EnergySnapshot,
    GammaAdmissibilityError,
    ParameterError,
    ProfileValidationError,
    RunConfig,
    SweepEntry,
    SweepPlan,
)
from profiles import make_profile
from continuation import (
    SPATIAL_LADDER,
    TEMPORAL_LADDER,
    ManufacturedSolution,
    Simulation,
    SweepOutcome,
    aggregate,
    boundary_exponents,
    convergence_study,
    direct_weight,
    gamma_transform,
    is_integrable,
    kappa_sweep,
    observed_order,
    trajectory_distance,
    validity_horizon,
)


class TestGammaTransform:
    def test_polytropic_weight(self):
        weight = gamma_transform(make_profile('polytropic', {'gamma': 1.5}))
        assert weight.evaluate(np.array(0.5)) == pytest.approx(0.25)
        assert weight.formulation == 'omega'
        assert weight.pressure_coefficient == pytest.approx(3.0)
        assert weight.flux_exponent == pytest.approx(3.0)
        assert weight.integrable

    def test_gamma_two_matches_density(self, parabolic):
        weight = gamma_transform(parabolic)
        x = np.linspace(0.0, 1.0, 7)
        assert np.allclose(weight.evaluate(x), parabolic.density(x))
        assert direct_weight(parabolic).formulation == 'density'

    def test_density_formulation_needs_gamma_two(self):
        with pytest.raises(GammaAdmissibilityError):
            direct_weight(make_profile('polytropic', {'gamma': 1.5}))

    def test_boundary_exponents(self):
        left, right = boundary_exponents(make_profile('polytropic', {'gamma': 2.5}))
        assert left == pytest.approx(1.0, abs=1e-3)
        assert right == pytest.approx(1.0, abs=1e-3)

    def test_degenerate_weight_not_integrable(self):
        p = make_profile('expression', {'rho0': 'x**2*(1 - x)**2', 'gamma': 2.5}, validate=False)
        assert not is_integrable(p)
        with pytest.raises(ProfileValidationError):
            gamma_transform(p)
        assert not gamma_transform(p, validate=False).integrable


class TestGeneralGammaRuns:
    @pytest.mark.slow
    @pytest.mark.parametrize('gamma', [1.5, 2.5])
    def test_polytropic_run_completes(self, gamma):
        result = Simulation(RunConfig(profile='polytropic', gamma=gamma)).run()
        assert result.status == 'ok'
        assert result.report.converged
        assert result.weight.formulation == 'omega'

    @pytest.mark.parametrize('gamma', [1.0, 3.0])
    def test_endpoint_gammas_rejected(self, gamma):
        codes = [f.code for f in RunConfig(profile='polytropic', gamma=gamma).validate()]
        assert codes == ['gamma_range']

    def test_transformed_matches_direct_at_gamma_two(self):
        small = dict(T_lagrangian=0.02, n_modes=12)
        transformed = Simulation(RunConfig(formulation='omega', **small)).run()
        direct = Simulation(RunConfig(formulation='density', **small)).run()
        assert direct.weight.formulation == 'density'
        assert np.max(np.abs(transformed.trajectory.coefficients - direct.trajectory.coefficients)) <= 1e-12
        v_transformed = transformed.trajectory.nodal_velocity()
        v_direct = direct.trajectory.nodal_velocity()
        assert np.max(np.abs(v_transformed - v_direct)) <= 1e-12


class TestManufactured:
    def test_exact_solution_vanishes_at_boundary(self, parabolic):
        solution = ManufacturedSolution(parabolic, kappa=0.1)
        assert solution.exact(np.array([0.0, 1.0]), 0.3) == pytest.approx([0.0, 0.0], abs=1e-15)
        assert np.all(np.isfinite(solution.source(np.linspace(0.01, 0.99, 9), 0.2)))

    def test_rejects_bad_input(self, parabolic):
        with pytest.raises(ParameterError):
            ManufacturedSolution(parabolic, kappa=0.0)
        with pytest.raises(ParameterError):
            ManufacturedSolution(parabolic, kappa=0.1, expr='exp(-t)*(1 + x)')
        tabulated = make_profile('tabulated', {'x': np.linspace(0, 1, 9),
                                               'rho0': np.linspace(0, 1, 9) * (1 - np.linspace(0, 1, 9))})
        with pytest.raises(ParameterError):
            ManufacturedSolution(tabulated, kappa=0.1)

    def test_temporal_order(self):
        table = convergence_study(RunConfig(kappa=0.1, T_lagrangian=0.5), TEMPORAL_LADDER)
        assert [r.dt for r in table.rows] == [0.1, 0.05, 0.025, 0.0125]
        assert table.rows[-1].error < 1e-4
        assert all(r.observed_order > 1.8 for r in table.rows[1:])

    def test_spatial_refinement(self):
        table = convergence_study(RunConfig(kappa=0.1, T_lagrangian=0.5), SPATIAL_LADDER)
        errors = [r.error for r in table.rows]
        assert errors[0] > errors[1] > errors[2]
        assert all(r.observed_order is None for r in table.rows)

    def test_empty_ladder(self):
        with pytest.raises(ValueError):
            convergence_study(RunConfig(), [])

    def test_observed_order(self):
        coarse = ConvergenceRow(n_modes=32, dt=0.1, error=4e-4)
        fine = ConvergenceRow(n_modes=32, dt=0.05, error=1e-4)
        assert observed_order(coarse, fine) == pytest.approx(2.0)
        assert observed_order(coarse, ConvergenceRow(n_modes=16, dt=0.05, error=1e-4)) is None


class TestRunConfig:
    def test_defaults_are_valid(self):
        assert RunConfig().validate() == []

    def test_findings(self):
        config = RunConfig(gamma=3.0, kappa=1.5, dt=0.1, T_lagrangian=0.05, profile='gaussian')
        codes = {f.code for f in config.validate()}
        assert {'gamma_range', 'kappa_range', 'time_step', 'profile_kind'} <= codes
        messages = {f.message for f in config.validate()}
        assert 'gamma out of (1,3)' in messages

    def test_density_formulation_needs_gamma_two(self):
        codes = [f.code for f in RunConfig(gamma=1.5, profile='polytropic', formulation='density').validate()]
        assert codes == ['formulation']

    def test_sweep_kappas_must_decrease(self):
        codes = [f.code for f in RunConfig(sweep_kappas=[1e-3, 1e-2]).validate()]
        assert codes == ['sweep_kappas']

    def test_unknown_keys(self):
        with pytest.raises(ConfigError):
            RunConfig.from_dict({'kapa': 0.1})
        with pytest.raises(ConfigError):
            RunConfig.from_dict({'n_modes': 'many'})

    def test_from_file(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text(json.dumps({'kappa': 0.005, 'sweep_ladder': [[8, 0.01]]}))
        config = RunConfig.from_file(str(path), defaults={'n_modes': 16})
        assert config.kappa == 0.005
        assert config.n_modes == 16
        assert config.sweep_ladder == [(8, 0.01)]
        with pytest.raises(ConfigError):
            RunConfig.from_file(str(tmp_path / 'missing.json'))

    def test_hash(self):
        base = RunConfig()
        assert len(base.config_hash()) == 12
        assert base.config_hash() == RunConfig().config_hash()
        assert base.with_kappa(0.02).config_hash() != base.config_hash()
        assert RunConfig(output_dir='elsewhere').config_hash() == base.config_hash()

    def test_infinite_tolerance_round_trip(self):
        config = RunConfig(fp_tol=float('inf'))
        assert config.to_dict()['fp_tol'] == 'inf'
        assert RunConfig.from_dict(config.to_dict()).fp_tol == float('inf')

    def test_fixed_point_config(self):
        fp = RunConfig(n_modes=8, M_bound=10.0).fixed_point_config()
        assert (fp.n_modes, fp.M_bound, fp.T) == (8, 10.0, 0.05)


class TestSweepPlan:
    def test_rejects_bad_kappas(self):
        for kappas in ([], [1e-2, 1e-2], [1e-3, 1e-2], [1e-2, -1e-3]):
            with pytest.raises(ParameterError):
                SweepPlan(kappas, 2.0, RunConfig())

    def test_run_configs(self):
        plan = SweepPlan([1e-2, 1e-3], 2.0, RunConfig(n_modes=8))
        configs = plan.run_configs()
        assert [c.kappa for c in configs] == [1e-2, 1e-3]
        assert all(c.n_modes == 8 for c in configs)


class TestAggregation:
    def test_validity_horizon(self):
        snapshots = [EnergySnapshot.from_terms(t, [1.0]) for t in (0.0, 0.1, 0.2, 0.3)]
        passed = BoundVerdict(True, 1.0, 2.0, None, 1.0, 0.0)
        failed = BoundVerdict(False, 1.0, 2.0, 0.2, 3.0, 0.0)
        assert validity_horizon(snapshots, passed) == 0.3
        assert validity_horizon(snapshots, failed) == 0.1

    def test_failed_entries_only(self):
        report = aggregate([SweepOutcome(SweepEntry(kappa=0.9, status='failed', exit_code=1))])
        assert report.common_horizon is None
        assert len(report.failures) == 1

    def test_distance_needs_shared_grid(self):
        times = np.linspace(0.0, 0.1, 3)
        a = SweepOutcome(SweepEntry(0.1, 'ok'), times=times, weights=np.ones(2), velocity=np.zeros((3, 2)))
        b = SweepOutcome(SweepEntry(0.01, 'ok'), times=times, weights=np.ones(3), velocity=np.zeros((3, 3)))
        with pytest.raises(ValueError):
            trajectory_distance(a, b, 0.1)
        assert trajectory_distance(a, a, 0.1) == 0.0


@pytest.mark.slow
class TestKappaSweep:
    def test_vanishing_viscosity_ladder(self):
        report = kappa_sweep(SweepPlan([1e-2, 1e-3, 1e-4], 2.0, RunConfig()), workers=1)
        assert [e.status for e in report.entries] == ['ok', 'ok', 'ok']
        assert report.common_horizon == pytest.approx(0.05)
        assert report.t_valid_spread < 2.0
        assert report.kappa_independent
        assert len(report.distances) == 2
        assert report.distances[1] <= report.distances[0]
        assert report.distances_decreasing

    def test_failing_entry_does_not_stop_sweep(self):
        template = RunConfig(T_lagrangian=0.01, n_modes=8)
        report = kappa_sweep(SweepPlan([0.9, 1e-2], 2.0, template), workers=1)
        assert [e.status for e in report.entries] == ['failed', 'ok']
        assert report.entries[0].exit_code == 1
        assert 'mollifier' in report.entries[0].error
        assert len(report.failures) == 1
