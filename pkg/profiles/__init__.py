"""
Initial data: density and velocity profiles, the physical-vacuum check,
mollification and the compatibility time derivatives at t = 0.
"""

from .builder import make_profile, make_velocity, load_tabulated_csv, check_gamma
from .vacuum import validate_vacuum, check_witness
from .mollifier import mollifier_width, mollify_velocity, mollify_density
from .compatibility import (
    CompatibilityData,
    CompatibilityField,
    compute_u1,
    compute_uk,
    pressure_coefficients,
)
from .evaluators import omega_field

__all__ = [
    'make_profile',
    'make_velocity',
    'load_tabulated_csv',
    'check_gamma',
    'validate_vacuum',
    'check_witness',
    'mollifier_width',
    'mollify_velocity',
    'mollify_density',
    'CompatibilityData',
    'CompatibilityField',
    'compute_u1',
    'compute_uk',
    'pressure_coefficients',
    'omega_field',
]
