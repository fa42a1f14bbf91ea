"""
Mollification of Initial Data

Smooth the initial velocity and density at scale epsilon = 1/|ln kappa|.
Velocities are extended by even reflection, densities by odd reflection of
the vacuum weight followed by an affine correction that restores the
Dirichlet values exactly.
"""

import logging

import numpy as np

from models.errors import ParameterError, ProfileValidationError
from models.profile import DensityProfile, VelocityProfile
from .evaluators import (
    ConstantEvaluator,
    MollifiedDensityEvaluator,
    MollifiedVelocityEvaluator,
    omega_field,
)

logger = logging.getLogger(__name__)

POSITIVITY_GRID = 2001
MIN_MOLLIFIED_SAMPLES = 65


def mollifier_width(kappa: float) -> float:
    """
    Kernel radius 1/|ln kappa|.

    Raises:
        ParameterError: kappa outside (0, 1) or radius not below 1/2
    """
    kappa = float(kappa)
    if not (0.0 < kappa < 1.0):
        raise ParameterError(f"mollifier width undefined for kappa={kappa}; need 0 < kappa < 1")
    width = 1.0 / abs(np.log(kappa))
    if width >= 0.5:
        raise ParameterError(
            f"kappa={kappa} gives mollifier radius {width:.3f} >= 1/2; use kappa < exp(-2)")
    return width


def mollify_velocity(u0: VelocityProfile, kappa: float) -> VelocityProfile:
    """
    Mollify an initial velocity.

    Constant velocities are returned unchanged.

    Args:
        u0: Initial velocity
        kappa: Regularization parameter in (0, exp(-2))

    Returns:
        Smooth VelocityProfile

    Example:
        >>> mollify_velocity(make_velocity('constant', {'value': 3.0}), np.exp(-10)).u0[0]
        3.0
    """
    width = mollifier_width(kappa)
    if isinstance(u0.evaluator, ConstantEvaluator):
        return u0
    evaluator = MollifiedVelocityEvaluator(u0, width)
    params = dict(u0.params)
    params.update({'kappa': float(kappa), 'width': width, 'source': u0.smoothness})
    x = np.asarray(u0.x, dtype=float)
    logger.debug(f"Mollified velocity with radius {width:.4g}")
    return VelocityProfile(x=x, u0=evaluator.evaluate(x, 0), smoothness='mollified',
                           params=params, evaluator=evaluator)


def mollify_density(p: DensityProfile, kappa: float) -> DensityProfile:
    """
    Mollify a density profile and re-validate it.

    Args:
        p: Density profile
        kappa: Regularization parameter in (0, exp(-2))

    Returns:
        Mollified DensityProfile vanishing exactly at both endpoints

    Raises:
        ProfileValidationError: The mollified weight is not positive inside,
            or the result is no longer a physical vacuum
    """
    from .vacuum import validate_vacuum

    width = mollifier_width(kappa)
    evaluator = MollifiedDensityEvaluator(omega_field(p.evaluator), width, p.gamma)

    grid = np.linspace(0.0, 1.0, POSITIVITY_GRID)[1:-1]
    omega = evaluator.omega(grid, 0)
    worst = int(np.argmin(omega))
    if not omega[worst] > 0.0:
        raise ProfileValidationError(
            f"mollified profile loses positivity at x={grid[worst]:.4f} "
            f"(omega0={omega[worst]:.3e}); kappa={kappa} is too large for this profile")

    x = np.linspace(0.0, 1.0, max(len(p.x), MIN_MOLLIFIED_SAMPLES))
    rho0 = evaluator.density(x, 0)
    rho0[0] = rho0[-1] = 0.0
    slopes = evaluator.omega(np.array([0.0, 1.0]), 1)
    params = {'kappa': float(kappa), 'width': width, 'source': p.kind}
    params.update({k: v for k, v in p.params.items() if k not in ('x', 'rho0')})
    mollified = DensityProfile(
        gamma=p.gamma,
        x=x,
        rho0=rho0,
        left_slope=float(slopes[0]),
        right_slope=float(slopes[1]),
        kind='mollified',
        closed_form=p.closed_form,
        params=params,
        evaluator=evaluator,
    )
    report = validate_vacuum(mollified)
    if not report.passed:
        raise ProfileValidationError(
            f"mollified profile is not a physical vacuum (kappa={kappa}): " + '; '.join(report.failures))
    logger.debug(f"Mollified density with radius {width:.4g}: slopes "
                 f"({mollified.left_slope:.4g}, {mollified.right_slope:.4g})")
    return mollified
