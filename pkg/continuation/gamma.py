"""
General Adiabatic Index

For gamma != 2 the regularized problem is written for the weight
omega0 = rho0^(gamma-1) and the unknown X = omega0 v. The weight must be a
physical vacuum (distance-like at the boundary) and omega0^(1/(gamma-1)-1)
must be square integrable, which near a physical vacuum means gamma < 3.
"""

import logging
from typing import Tuple

import numpy as np

from models.errors import GammaAdmissibilityError, ProfileValidationError
from models.profile import DensityProfile
from models.weight import VacuumWeight
from profiles.builder import GAMMA_RANGE_MESSAGE, check_gamma
from profiles.compatibility import pressure_coefficients
from profiles.vacuum import validate_vacuum

logger = logging.getLogger(__name__)

PROBE_DISTANCE = 1e-4


def boundary_exponents(p: DensityProfile, h: float = PROBE_DISTANCE) -> Tuple[float, float]:
    """
    Exponents beta with omega0 ~ d^beta at x = 0 and x = 1.

    Measured from omega0 at distances h and 2h; a physical vacuum gives 1.
    """
    samples = np.array([h, 2.0 * h, 1.0 - h, 1.0 - 2.0 * h])
    values = np.abs(np.asarray(p.omega(samples, 0), dtype=float))
    with np.errstate(divide='ignore', invalid='ignore'):
        left = np.log(values[1] / values[0]) / np.log(2.0)
        right = np.log(values[3] / values[2]) / np.log(2.0)
    return float(left), float(right)


def integrability_exponent(gamma: float) -> float:
    """Exponent q of omega0^q = (omega0^(1/(gamma-1)-1))^2."""
    return 2.0 * (1.0 / (gamma - 1.0) - 1.0)


def is_integrable(p: DensityProfile) -> bool:
    """
    Whether omega0^(1/(gamma-1)-1) is square integrable near both endpoints.

    With omega0 ~ d^beta the square behaves like d^(q beta), integrable for
    q beta > -1.
    """
    q = integrability_exponent(p.gamma)
    return all(np.isfinite(beta) and q * beta > -1.0 for beta in boundary_exponents(p))


def gamma_transform(p: DensityProfile, validate: bool = True) -> VacuumWeight:
    """
    Vacuum weight omega0 = rho0^(gamma-1) and the operator coefficients.

    Args:
        p: Density profile (any gamma in (1, 3))
        validate: Require the physical-vacuum check on omega0 and the
            integrability of omega0^(1/(gamma-1)-1)

    Returns:
        VacuumWeight in the 'omega' formulation

    Raises:
        GammaAdmissibilityError: gamma outside (1, 3)
        ProfileValidationError: omega0 is not a physical vacuum, or the
            integrability check fails

    Example:
        >>> gamma_transform(make_profile('polytropic', {'gamma': 1.5})).evaluate(0.5)
        array(0.25)
    """
    try:
        gamma = check_gamma(p.gamma)
    except GammaAdmissibilityError:
        logger.error(f"✗ {GAMMA_RANGE_MESSAGE} (gamma={p.gamma})")
        raise
    a, b, c = pressure_coefficients(gamma)
    integrable = is_integrable(p)

    if validate:
        report = validate_vacuum(p)
        if not report.passed:
            raise ProfileValidationError(
                f"omega0 = rho0^(gamma-1) is not a physical vacuum for gamma={gamma}: "
                + '; '.join(report.failures))
        if not integrable:
            raise ProfileValidationError(
                f"omega0^(1/(gamma-1)-1) is not square integrable for gamma={gamma}")

    logger.debug(f"Vacuum weight for gamma={gamma}: a={a:.6g}, coupling={c:.6g}, integrable={integrable}")
    return VacuumWeight(
        gamma=gamma,
        pressure_coefficient=a,
        curvature_coefficient=b,
        coupling_coefficient=c,
        flux_exponent=gamma / (gamma - 1.0),
        formulation='omega',
        omega_fn=p.omega,
        integrable=integrable,
    )


def direct_weight(p: DensityProfile) -> VacuumWeight:
    """
    Weight of the density formulation, valid for gamma = 2 only.

    Raises:
        GammaAdmissibilityError: gamma != 2
    """
    if p.gamma != 2.0:
        raise GammaAdmissibilityError(f"the density formulation requires gamma = 2, got {p.gamma}")
    a, b, c = pressure_coefficients(2.0)
    return VacuumWeight(
        gamma=2.0,
        pressure_coefficient=a,
        curvature_coefficient=b,
        coupling_coefficient=c,
        flux_exponent=2.0,
        formulation='density',
        omega_fn=p.density,
        integrable=True,
    )
