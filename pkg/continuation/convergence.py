"""
Convergence Study

Errors of the linearized solver against a manufactured solution over a
(n_modes, dt) refinement ladder, with Richardson ratios and observed orders.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

from models.reports import ConvergenceRow, ConvergenceTable
from models.run_config import RunConfig
from profiles.builder import make_profile
from .manufactured import DEFAULT_SOLUTION, ManufacturedSolution

logger = logging.getLogger(__name__)

# default ladders of the verification harness
TEMPORAL_LADDER = [(32, 0.1), (32, 0.05), (32, 0.025), (32, 0.0125)]
SPATIAL_LADDER = [(4, 1e-3), (8, 1e-3), (16, 1e-3)]


def observed_order(previous: ConvergenceRow, row: ConvergenceRow) -> Optional[float]:
    """Temporal order log(e0/e1) / log(dt0/dt1) for rows at equal n_modes."""
    if previous.n_modes != row.n_modes or previous.dt == row.dt:
        return None
    if not (previous.error > 0 and row.error > 0):
        return None
    return math.log(previous.error / row.error) / math.log(previous.dt / row.dt)


def convergence_study(config: RunConfig, ladder: Optional[Sequence[Tuple[int, float]]] = None,
                      expr: str = DEFAULT_SOLUTION) -> ConvergenceTable:
    """
    Run the manufactured solution over a refinement ladder.

    Args:
        config: Baseline run config (profile, gamma, kappa, T_lagrangian);
            the profile is used without mollification
        ladder: (n_modes, dt) rungs; defaults to config.sweep_ladder
        expr: Manufactured X*(x, t)

    Returns:
        ConvergenceTable with one row per rung

    Example:
        >>> table = convergence_study(config, TEMPORAL_LADDER)
        >>> all(r.observed_order > 1.9 for r in table.rows[1:])
        True
    """
    ladder = list(ladder if ladder is not None else config.sweep_ladder)
    if not ladder:
        raise ValueError("convergence study needs at least one (n_modes, dt) rung")
    profile = make_profile(config.profile, {**config.profile_params, 'gamma': config.gamma})
    solution = ManufacturedSolution(profile, config.kappa, expr)

    rows: List[ConvergenceRow] = []
    for n_modes, dt in ladder:
        row = ConvergenceRow(n_modes=int(n_modes), dt=float(dt),
                             error=solution.error(int(n_modes), config.T_lagrangian, float(dt)))
        if rows:
            previous = rows[-1]
            row.ratio = previous.error / row.error if row.error > 0 else math.inf
            row.observed_order = observed_order(previous, row)
        rows.append(row)
        logger.info(f"  n_modes={row.n_modes:4d} dt={row.dt:.3e} error={row.error:.3e}"
                    + (f" ratio={row.ratio:.2f}" if row.ratio is not None else ''))
    return ConvergenceTable(rows=rows, kappa=config.kappa, T=config.T_lagrangian)
