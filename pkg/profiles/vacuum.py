"""
Physical Vacuum Check

Verify that the sound speed squared c^2 = gamma omega0 vanishes linearly at
both boundary points and find a witness (alpha, C, C_alpha) for the
boundary-layer bounds |omega0'| >= C where d <= alpha and omega0 >= C_alpha
where d >= alpha.
"""

import logging

import numpy as np

from models.errors import ProfileValidationError
from models.profile import DensityProfile, VacuumReport
from spectral.hardy import distance

logger = logging.getLogger(__name__)

MIN_SAMPLES = 8
GRID_POINTS = 401
SLOPE_FLOOR = 1e-12


def _check_grid(p: DensityProfile) -> np.ndarray:
    return np.union1d(np.linspace(0.0, 1.0, GRID_POINTS), np.asarray(p.x, dtype=float))


def validate_vacuum(p: DensityProfile, alpha: float = 0.25) -> VacuumReport:
    """
    Check the physical-vacuum condition of a profile.

    A profile that is not a physical vacuum fails the report; it does not
    raise.

    Args:
        p: Density profile sampled on at least 8 nodes
        alpha: Boundary-layer width of the witness, in (0, 1/2)

    Returns:
        VacuumReport with c^2 slopes, witness and failures

    Raises:
        ProfileValidationError: Fewer than 8 samples

    Example:
        >>> validate_vacuum(make_profile('parabolic')).witness
        (0.25, 0.5, 0.1875)
    """
    if len(p.x) < MIN_SAMPLES:
        raise ProfileValidationError(f"vacuum check needs at least {MIN_SAMPLES} samples, got {len(p.x)}")
    if not (0.0 < alpha < 0.5):
        raise ValueError(f"alpha must lie in (0, 1/2), got {alpha}")

    failures = []
    left, right = float(p.left_slope), float(p.right_slope)
    for name, slope in (('left', left), ('right', right)):
        if not np.isfinite(slope):
            failures.append(f"{name} slope of omega0 is unbounded")
        elif abs(slope) <= SLOPE_FLOOR:
            failures.append(f"{name} slope of omega0 vanishes")
    if np.isfinite(left) and left < -SLOPE_FLOOR:
        failures.append("omega0 decreases into the gas at x = 0")
    if np.isfinite(right) and right > SLOPE_FLOOR:
        failures.append("omega0 decreases into the gas at x = 1")

    rho0 = np.asarray(p.rho0, dtype=float)
    if rho0[0] != 0.0 or rho0[-1] != 0.0:
        failures.append("rho0 does not vanish at the endpoints")
    if np.any(rho0[1:-1] <= 0.0):
        failures.append("rho0 is not positive at every interior node")

    grid = _check_grid(p)
    d = distance(grid)
    with np.errstate(divide='ignore', invalid='ignore'):
        omega = p.omega(grid, 0)
        slope = np.abs(p.omega(grid, 1))
    layer, bulk = d <= alpha, d >= alpha
    C = float(np.min(slope[layer]))
    C_alpha = float(np.min(omega[bulk]))
    if not (np.isfinite(C) and C > 0.0):
        failures.append(f"no boundary-layer bound: min |omega0'| = {C:.3e} where d <= {alpha}")
    if not (np.isfinite(C_alpha) and C_alpha > 0.0):
        failures.append(f"no interior bound: min omega0 = {C_alpha:.3e} where d >= {alpha}")
    interior = omega[(grid > 0.0) & (grid < 1.0)]
    if np.any(~np.isfinite(interior)) or np.any(interior <= 0.0):
        failures.append("omega0 is not positive in the interior")

    report = VacuumReport(
        passed=not failures,
        c2_slope_left=p.gamma * left,
        c2_slope_right=p.gamma * right,
        alpha=float(alpha),
        C=C,
        C_alpha=C_alpha,
        failures=failures,
    )
    if report.passed:
        logger.debug(f"✓ Physical vacuum: c^2 slopes ({report.c2_slope_left:.4g}, {report.c2_slope_right:.4g})")
    else:
        logger.info(f"✗ Physical vacuum check failed: {'; '.join(failures)}")
    return report


def check_witness(p: DensityProfile, alpha: float, C: float, C_alpha: float,
                  rtol: float = 1e-12) -> bool:
    """
    Certify a witness triple at the sample nodes and the check grid.

    Args:
        p: Density profile
        alpha: Boundary-layer width
        C: Claimed lower bound of |omega0'| where d <= alpha
        C_alpha: Claimed lower bound of omega0 where d >= alpha
        rtol: Relative slack for rounding

    Returns:
        True when both bounds hold everywhere checked
    """
    grid = _check_grid(p)
    d = distance(grid)
    with np.errstate(divide='ignore', invalid='ignore'):
        omega = p.omega(grid, 0)
        slope = np.abs(p.omega(grid, 1))
    layer_ok = np.all(slope[d <= alpha] >= C * (1.0 - rtol))
    bulk_ok = np.all(omega[d >= alpha] >= C_alpha * (1.0 - rtol))
    return bool(layer_ok and bulk_ok)
