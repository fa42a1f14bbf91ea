"""
Spectral Toolkit Testing
Tests: sine basis, projection, Hardy quotients, weighted norms, embedding
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import HardyContractError
from spectral import (
    ExpressionField,
    SpectralField,
    WeightedNorm,
    build_basis,
    embedding_check,
    hardy_matrix,
    hardy_quotient,
    hardy_ratio,
    project,
    quadrature_size,
    sobolev_norm_sq,
    two_panel_rule,
    weighted_norm,
)


class TestQuadrature:
    def test_two_panel_rule_integrates_polynomials(self):
        nodes, weights = two_panel_rule(20)
        assert np.all((nodes > 0) & (nodes < 1))
        assert weights.sum() == pytest.approx(1.0, abs=1e-14)
        assert weights @ nodes ** 5 == pytest.approx(1 / 6, abs=1e-14)

    def test_quadrature_size(self):
        assert quadrature_size(1) == 36
        assert quadrature_size(24) == 128
        assert quadrature_size(10, quadrature_factor=2) == 52


class TestBasis:
    def test_mode_values(self, basis16):
        assert basis16.mode_values(np.array(0.5))[0] == pytest.approx(np.sqrt(2.0), abs=1e-15)
        ends = basis16.mode_values(np.array([0.0, 1.0]), order=2)
        assert np.all(ends == 0.0)

    def test_gram_is_identity(self, basis16):
        assert np.allclose(basis16.gram(), np.eye(16), atol=1e-12)

    def test_eigenvalues(self):
        basis = build_basis(3)
        assert np.allclose(basis.eigenvalues, (np.pi * np.arange(1, 4)) ** 2)

    def test_basis_is_cached_and_read_only(self):
        assert build_basis(8) is build_basis(8)
        with pytest.raises(ValueError):
            build_basis(8).nodes[0] = 0.3

    def test_invalid_sizes(self):
        with pytest.raises(ValueError):
            build_basis(0)
        with pytest.raises(ValueError):
            build_basis(10, n_quad=20)


class TestProjection:
    def test_mode_projects_to_unit_vector(self, basis16):
        field = project(ExpressionField('sqrt(2)*sin(2*pi*x)'), basis16)
        expected = np.zeros(16)
        expected[1] = 1.0
        assert np.allclose(field.coefficients, expected, atol=1e-12)

    def test_parabola_projection_error(self):
        basis = build_basis(32)
        field = project(lambda x: x * (1 - x), basis)
        error = np.sqrt(basis.weights @ (basis.modes @ field.coefficients - basis.nodes * (1 - basis.nodes)) ** 2)
        assert error < 1e-4

    def test_scalar_projection(self, basis16):
        field = project(0.0, basis16)
        assert field.l2_norm() == 0.0

    def test_field_arithmetic(self, basis16):
        a = project(ExpressionField('sin(pi*x)'), basis16)
        b = 2.0 * a + a
        assert np.allclose(b.coefficients, 3.0 * a.coefficients)
        assert b.h1_norm() >= b.l2_norm()


class TestHardy:
    def test_sine_endpoint_limit(self):
        value = hardy_quotient(ExpressionField('sin(pi*x)'), 0, np.array([0.0, 1.0]))
        assert np.allclose(value, [np.pi, np.pi], atol=1e-12)

    def test_parabola_quotient(self):
        u = ExpressionField('x*(1 - x)')
        x = np.array([0.0, 0.25, 0.75, 1.0])
        assert np.allclose(hardy_quotient(u, 0, x), [1.0, 0.75, 0.75, 1.0], atol=1e-13)
        assert np.allclose(hardy_quotient(u, 1, x), [-1.0, -1.0, 1.0, 1.0], atol=1e-13)

    def test_parabola_ratio(self):
        report = hardy_ratio(ExpressionField('x*(1 - x)'), 1)
        assert report.quotient_norm ** 2 == pytest.approx(7 / 12, rel=1e-10)
        assert report.ratio > 0

    def test_contract_violation(self):
        with pytest.raises(HardyContractError):
            hardy_quotient(ExpressionField('1 + x'), 0, np.array([0.5]))

    def test_random_sine_polynomials_bounded(self, rng):
        basis = build_basis(6)
        for _ in range(100):
            u = SpectralField(rng.normal(size=6), basis)
            for s in (1, 2):
                assert hardy_ratio(u, s).ratio <= 10.0

    def test_matrix_matches_quotient(self, basis16):
        x = np.array([0.0, 0.3, 0.8, 1.0])
        H = hardy_matrix(basis16, 1, x)
        column = hardy_quotient(ExpressionField('sqrt(2)*sin(3*pi*x)'), 1, x)
        assert np.allclose(H[:, 2], column, atol=1e-10)


class TestNorms:
    def test_distance_weighted_constant(self):
        assert WeightedNorm(s=0, weight=1)(ExpressionField('1'), squared=True) == pytest.approx(0.25, abs=1e-14)

    def test_half_norm_of_constant(self):
        assert sobolev_norm_sq(ExpressionField('1'), 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_h1_norm_of_sine(self):
        value = weighted_norm(ExpressionField('sqrt(2)*sin(pi*x)'), 1.0, squared=True)
        assert value == pytest.approx(1 + np.pi ** 2, rel=1e-12)

    def test_embedding(self):
        assert embedding_check(ExpressionField('1'), 1) == pytest.approx(4.0, rel=1e-12)
        assert embedding_check(ExpressionField('0'), 2) == 0.0
        with pytest.raises(ValueError):
            embedding_check(ExpressionField('1'), 3)
