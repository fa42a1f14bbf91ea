"""
Spectral backbone: Gauss quadrature, the Dirichlet sine basis, derivative
jets, the Hardy quotient and weighted Sobolev norms.
"""

from .quadrature import gauss_legendre, composite_gauss, two_panel_rule, quadrature_size
from .jets import evaluate_jet, leibniz_product, jet_power
from .basis import (
    Basis,
    Differentiable,
    ExpressionField,
    SpectralField,
    build_basis,
    nodal_values,
    project,
)
from .hardy import (
    distance,
    default_theta_nodes,
    check_endpoints,
    hardy_quotient,
    hardy_matrix,
    hardy_ratio,
)
from .norms import (
    WeightedNorm,
    weighted_norm,
    sobolev_norm_sq,
    jet_norm_sq,
    slobodeckij_seminorm_sq,
    weight_values,
    field_jet,
    embedding_check,
    default_rule,
)

__all__ = [
    'gauss_legendre',
    'composite_gauss',
    'two_panel_rule',
    'quadrature_size',
    'evaluate_jet',
    'leibniz_product',
    'jet_power',
    'Basis',
    'Differentiable',
    'ExpressionField',
    'SpectralField',
    'build_basis',
    'nodal_values',
    'project',
    'distance',
    'default_theta_nodes',
    'check_endpoints',
    'hardy_quotient',
    'hardy_matrix',
    'hardy_ratio',
    'WeightedNorm',
    'weighted_norm',
    'sobolev_norm_sq',
    'jet_norm_sq',
    'slobodeckij_seminorm_sq',
    'weight_values',
    'field_jet',
    'embedding_check',
    'default_rule',
]
