"""
Damping Equation

Exact exponential integration of f + kappa f_t = g with g linear between
grid times. Every step is a convex combination of the previous value and
values of g, so sup |f| <= max(|f(0)|, sup |g|) whatever kappa is.
"""

import logging
from typing import Callable, Union

import numpy as np

from models.errors import ParameterError
from models.reports import DampingReport

logger = logging.getLogger(__name__)

BOUND_TOLERANCE = 1e-4


def damping_solve(f0, g: Union[np.ndarray, Callable[[np.ndarray], np.ndarray]], kappa: float,
                  times: np.ndarray, tolerance: float = BOUND_TOLERANCE) -> DampingReport:
    """
    Solve f + kappa f_t = g on a time grid.

    Args:
        f0: Initial value (scalar or array of field values)
        g: Source sampled on the grid, shape (n_times,) + shape(f0), or a callable of t
        kappa: Relaxation time, positive
        times: Increasing time grid starting at 0
        tolerance: Slack of the bound check

    Returns:
        DampingReport with the trajectory and the sup bound

    Raises:
        ParameterError: kappa <= 0

    Example:
        >>> report = damping_solve(3.0, np.ones(101), 0.1, np.linspace(0, 1, 101))
        >>> report.sup_f
        3.0
    """
    if not kappa > 0:
        raise ParameterError(f"damping equation needs kappa > 0, got {kappa}")
    times = np.asarray(times, dtype=float)
    f0 = np.asarray(f0, dtype=float)
    if callable(g):
        g_values = np.stack([np.broadcast_to(np.asarray(g(t), dtype=float), f0.shape) for t in times])
    else:
        g_values = np.broadcast_to(np.asarray(g, dtype=float), (len(times),) + f0.shape)

    f = np.empty((len(times),) + f0.shape)
    f[0] = f0
    for n in range(len(times) - 1):
        a = (times[n + 1] - times[n]) / kappa
        decay = np.exp(-a)
        gain = -np.expm1(-a)
        ramp = 1.0 - gain / a
        f[n + 1] = decay * f[n] + gain * g_values[n] + ramp * (g_values[n + 1] - g_values[n])

    sup_f = float(np.max(np.abs(f)))
    data_bound = float(max(np.max(np.abs(f0)), np.max(np.abs(g_values))))
    ratio = sup_f / data_bound if data_bound > 0 else 0.0
    logger.debug(f"Damping solve kappa={kappa}: sup|f| = {sup_f:.6g}, ratio {ratio:.6g}")
    return DampingReport(
        times=times,
        f=f,
        sup_f=sup_f,
        data_bound=data_bound,
        ratio=ratio,
        bound_ok=ratio <= 1.0 + tolerance,
    )
