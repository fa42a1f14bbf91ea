"""
Profile Builder

Construct density and velocity profiles from a kind name and a parameter
set, the way run configurations describe them.
"""

import csv
import logging
from typing import Any, Dict, Optional, Tuple

import numpy as np

from models.errors import GammaAdmissibilityError, ParameterError, ProfileValidationError
from models.profile import DensityProfile, VelocityProfile
from .evaluators import (
    ConstantEvaluator,
    ExpressionEvaluator,
    SplineEvaluator,
    SplineField,
)
from spectral.basis import ExpressionField

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 65
ENDPOINT_SNAP = 1e-14
GAMMA_RANGE_MESSAGE = "gamma out of (1,3): the weight omega0^(1/(gamma-1)-1) must be square integrable, which means 1 < gamma < 3"


def check_gamma(gamma: float) -> float:
    """Return gamma as float or raise GammaAdmissibilityError."""
    gamma = float(gamma)
    if not (1.0 < gamma < 3.0):
        raise GammaAdmissibilityError(f"{GAMMA_RANGE_MESSAGE} (got gamma={gamma})")
    return gamma


def load_tabulated_csv(path: str, column: str = 'rho0') -> Tuple[np.ndarray, np.ndarray]:
    """
    Read a two-column CSV with header `x,<column>`.

    Args:
        path: CSV file
        column: Name of the value column

    Returns:
        Tuple (x, values)

    Raises:
        ParameterError: Missing file, wrong header or non-numeric values
    """
    try:
        with open(path, 'r', newline='') as f:
            reader = csv.DictReader(f)
            if reader.fieldnames is None or 'x' not in reader.fieldnames or column not in reader.fieldnames:
                raise ParameterError(f"{path}: expected header 'x,{column}', got {reader.fieldnames}")
            rows = [(float(row['x']), float(row[column])) for row in reader]
    except OSError as e:
        raise ParameterError(f"cannot read tabulated profile {path}: {e}") from e
    except ValueError as e:
        if isinstance(e, ParameterError):
            raise
        raise ParameterError(f"{path}: non-numeric entry ({e})") from e
    if not rows:
        raise ParameterError(f"{path}: no samples")
    data = np.array(rows, dtype=float)
    return data[:, 0], data[:, 1]


def _check_nodes(x: np.ndarray) -> None:
    if len(x) < 4:
        raise ProfileValidationError(f"need at least 4 samples, got {len(x)}")
    if x[0] != 0.0 or x[-1] != 1.0:
        raise ProfileValidationError(f"nodes must run from 0 to 1, got [{x[0]}, {x[-1]}]")
    if np.any(np.diff(x) <= 0):
        raise ProfileValidationError("nodes must be strictly increasing")


def _snap_endpoints(values: np.ndarray, what: str) -> np.ndarray:
    values = np.array(values, dtype=float)
    for i in (0, -1):
        if abs(values[i]) <= ENDPOINT_SNAP:
            values[i] = 0.0
        else:
            raise ProfileValidationError(
                f"{what} must vanish at both endpoints, got {values[0]:.3e} and {values[-1]:.3e}")
    return values


def _closed_form(kind: str, params: Dict[str, Any], gamma: float) -> ExpressionEvaluator:
    amplitude = float(params.get('A', 1.0))
    if not amplitude > 0:
        raise ParameterError(f"amplitude A must be positive, got {amplitude}")
    if kind == 'parabolic':
        return ExpressionEvaluator(f"{amplitude!r}*x*(1 - x)", gamma)
    if kind == 'sine':
        return ExpressionEvaluator(f"{amplitude!r}*sin(pi*x)", gamma)
    if kind == 'polytropic':
        omega = f"{amplitude!r}*x*(1 - x)"
        if gamma == 2.0:
            return ExpressionEvaluator(omega, gamma)
        power = 1.0 / (gamma - 1.0)
        return ExpressionEvaluator(f"({omega})**{power!r}", gamma, omega_expr=omega)
    if kind == 'expression':
        if 'rho0' not in params:
            raise ParameterError("expression profile needs a 'rho0' parameter")
        return ExpressionEvaluator(str(params['rho0']), gamma)
    raise ParameterError(f"unknown profile kind '{kind}'")


def make_profile(kind: str, params: Optional[Dict[str, Any]] = None,
                 validate: bool = True) -> DensityProfile:
    """
    Build a density profile.

    Kinds: 'parabolic' (A x(1-x)), 'sine' (A sin(pi x)), 'polytropic'
    (weight A x(1-x), physical vacuum for every gamma), 'expression'
    (sympy string under 'rho0') and 'tabulated' (CSV under 'path', or
    arrays under 'x' and 'rho0').

    Args:
        kind: Profile kind
        params: Parameters; 'gamma' defaults to 2, 'n_samples' to 65
        validate: Run the physical-vacuum check and raise on failure

    Returns:
        DensityProfile

    Raises:
        GammaAdmissibilityError: gamma outside (1, 3)
        ProfileValidationError: The profile is not a physical vacuum

    Example:
        >>> p = make_profile('parabolic', {'gamma': 2.0})
        >>> (p.left_slope, p.right_slope)
        (1.0, -1.0)
    """
    params = dict(params or {})
    gamma = check_gamma(params.get('gamma', 2.0))

    if kind == 'tabulated':
        if 'path' in params:
            x, rho0 = load_tabulated_csv(params['path'], 'rho0')
        elif 'x' in params and 'rho0' in params:
            x = np.asarray(params['x'], dtype=float)
            rho0 = np.asarray(params['rho0'], dtype=float)
        else:
            raise ParameterError("tabulated profile needs 'path' or 'x' and 'rho0'")
        _check_nodes(x)
        rho0 = _snap_endpoints(rho0, 'rho0')
        evaluator = SplineEvaluator(x, rho0, gamma)
        closed_form = None
    else:
        evaluator = _closed_form(kind, params, gamma)
        n_samples = int(params.get('n_samples', DEFAULT_SAMPLES))
        x = np.linspace(0.0, 1.0, n_samples)
        rho0 = _snap_endpoints(evaluator.density(x, 0), 'rho0')
        closed_form = evaluator.closed_form

    with np.errstate(divide='ignore', invalid='ignore'):
        slopes = evaluator.omega(np.array([0.0, 1.0]), 1)
    profile = DensityProfile(
        gamma=gamma,
        x=x,
        rho0=rho0,
        left_slope=float(slopes[0]),
        right_slope=float(slopes[1]),
        kind=kind,
        closed_form=closed_form,
        params=params,
        evaluator=evaluator,
    )

    if validate:
        from .vacuum import validate_vacuum
        report = validate_vacuum(profile)
        if not report.passed:
            raise ProfileValidationError(
                f"{kind} profile is not a physical vacuum for gamma={gamma}: "
                + '; '.join(report.failures))
    logger.debug(f"Built profile {profile!r}")
    return profile


def make_velocity(kind: str = 'constant', params: Optional[Dict[str, Any]] = None,
                  n_samples: int = DEFAULT_SAMPLES) -> VelocityProfile:
    """
    Build an initial velocity.

    Args:
        kind: 'constant' ('value'), 'expression' ('u0' sympy string) or
            'tabulated' ('path' to an `x,u0` CSV, or 'x' and 'u0' arrays)
        params: Parameters of the kind
        n_samples: Samples stored for closed forms

    Returns:
        VelocityProfile
    """
    params = dict(params or {})
    if kind == 'constant':
        evaluator = ConstantEvaluator(float(params.get('value', 0.0)))
        x = np.linspace(0.0, 1.0, n_samples)
    elif kind == 'expression':
        if 'u0' not in params:
            raise ParameterError("expression velocity needs a 'u0' parameter")
        evaluator = ExpressionField(str(params['u0']))
        x = np.linspace(0.0, 1.0, n_samples)
    elif kind == 'tabulated':
        if 'path' in params:
            x, u0 = load_tabulated_csv(params['path'], 'u0')
        elif 'x' in params and 'u0' in params:
            x = np.asarray(params['x'], dtype=float)
            u0 = np.asarray(params['u0'], dtype=float)
        else:
            raise ParameterError("tabulated velocity needs 'path' or 'x' and 'u0'")
        _check_nodes(x)
        evaluator = SplineField(x, u0)
    else:
        raise ParameterError(f"unknown velocity kind '{kind}'")

    u0 = evaluator.evaluate(x, 0)
    if not np.all(np.isfinite(u0)):
        raise ParameterError("initial velocity has non-finite values")
    return VelocityProfile(x=x, u0=u0, smoothness=kind, params=params, evaluator=evaluator)
