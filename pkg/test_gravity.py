"""
Self-Gravity Testing
Tests: force values, Poisson consistency, momentum neutrality, panel differentiation
"""

import sys
from dataclasses import replace
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from gravity import (
    check_poisson_consistency,
    compute_force,
    differentiation_matrix,
    momentum_neutrality,
    panel_derivative,
)
from profiles import make_profile
from spectral import composite_gauss


class TestForce:
    def test_parabolic_values(self, parabolic_force):
        assert parabolic_force.total_mass == pytest.approx(1 / 6, abs=1e-15)
        values = parabolic_force.evaluate(np.array([0.0, 0.5, 1.0]))
        assert values == pytest.approx([1 / 12, 0.0, -1 / 12], abs=1e-14)
        left, right = parabolic_force.endpoint_values()
        assert left + right == 0.0

    def test_gravity_constant_scales(self, parabolic):
        force = compute_force(parabolic, C_poisson=2.0)
        assert force.evaluate(np.array([0.0]))[0] == pytest.approx(1 / 6)

    def test_derivative_is_minus_density(self, parabolic, parabolic_force):
        x = np.linspace(0.0, 1.0, 11)
        assert np.allclose(parabolic_force.evaluate(x, 1), -parabolic.density(x), atol=1e-15)

    def test_poisson_consistency(self, parabolic, parabolic_force):
        assert check_poisson_consistency(parabolic_force, parabolic) < 1e-10
        heavy = make_profile('parabolic', {'A': 3.0})
        assert check_poisson_consistency(compute_force(heavy, 2.0), heavy) < 1e-10

    def test_perturbed_force_detected(self, parabolic, parabolic_force):
        F = parabolic_force.F.copy()
        F[5] += 1e-6
        assert check_poisson_consistency(replace(parabolic_force, F=F), parabolic) > 1e-8

    def test_momentum_neutrality(self, parabolic, parabolic_force):
        assert abs(momentum_neutrality(parabolic_force, parabolic)) < 1e-14

    def test_random_tabulated_profiles(self, rng):
        x = np.linspace(0.0, 1.0, 17)
        for _ in range(100):
            rho0 = np.concatenate([[0.0], rng.uniform(0.2, 2.0, size=15), [0.0]])
            p = make_profile('tabulated', {'x': x, 'rho0': rho0}, validate=False)
            force = compute_force(p)
            assert abs(momentum_neutrality(force, p)) < 1e-12
            ends = force.evaluate(np.array([0.0, 1.0]))
            assert abs(ends[0] + ends[1]) < 1e-12
            assert ends[0] == pytest.approx(force.total_mass / 2, abs=1e-14)

    def test_force_is_linear_in_density(self, parabolic_force, rng):
        tripled = compute_force(make_profile('parabolic', {'A': 3.0}))
        assert np.allclose(tripled.F, 3.0 * parabolic_force.F, rtol=1e-12, atol=1e-15)
        assert tripled.total_mass == pytest.approx(3.0 * parabolic_force.total_mass, rel=1e-12)

        x = np.linspace(0.0, 1.0, 17)
        for _ in range(10):
            rho0 = np.concatenate([[0.0], rng.uniform(0.2, 2.0, size=15), [0.0]])
            scale = rng.uniform(0.1, 10.0)
            base = compute_force(make_profile('tabulated', {'x': x, 'rho0': rho0}, validate=False))
            scaled = compute_force(make_profile('tabulated', {'x': x, 'rho0': scale * rho0}, validate=False))
            assert np.allclose(scaled.F, scale * base.F, rtol=1e-12, atol=1e-15)
            assert np.allclose(scaled.m, scale * base.m, rtol=1e-12, atol=1e-15)


class TestDifferentiation:
    def test_cubic_is_exact(self):
        nodes = np.linspace(-1.0, 1.0, 5)
        D = differentiation_matrix(nodes)
        assert np.allclose(D @ nodes ** 3, 3 * nodes ** 2, atol=1e-12)
        assert np.allclose(D @ np.ones(5), 0.0, atol=1e-15)

    def test_panel_derivative(self):
        breakpoints = np.linspace(0.0, 1.0, 5)
        x, _ = composite_gauss(breakpoints, 6)
        derivative = panel_derivative(np.sin(x), breakpoints, 6)
        assert np.allclose(derivative, np.cos(x), atol=1e-7)
