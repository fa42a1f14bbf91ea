"""
Kappa Sweep

Runs one simulation per kappa toward the vanishing-viscosity limit,
optionally in a process pool, and aggregates validity horizons and the
distances between consecutive solutions on their common horizon.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Any, Dict, List, Optional

import numpy as np
from scipy.integrate import trapezoid

from models.errors import FixedPointDivergenceError, FrozenGeometryError, VacuumSimError
from models.reports import SweepEntry, SweepReport
from models.run_config import RunConfig, SweepPlan
from reporters.artifacts import write_run_artifacts
from storage import LocalArtifactStore
from .pipeline import RunResult, Simulation

logger = logging.getLogger(__name__)

KAPPA_INDEPENDENCE_FACTOR = 2.0
EXIT_ERROR = 1
EXIT_DIVERGED = 4


@dataclass
class SweepOutcome:
    """
    Picklable result of one sweep worker.

    Attributes:
        entry: Summary row
        config_hash: Hash of the entry's run configuration
        output_dir: Run directory of the entry's artifacts, if written
        times: Time grid (None on failure)
        nodes: Quadrature nodes of the velocity samples
        weights: Quadrature weights
        velocity: Nodal velocity history (n_times, n_nodes)
        n_modes: Galerkin modes of the entry
        dt: Time step of the entry
        result: Full RunResult when the entry ran in-process
    """

    entry: SweepEntry
    config_hash: str = ''
    output_dir: Optional[str] = None
    times: Optional[np.ndarray] = None
    nodes: Optional[np.ndarray] = None
    weights: Optional[np.ndarray] = None
    velocity: Optional[np.ndarray] = None
    n_modes: Optional[int] = None
    dt: Optional[float] = None
    result: Optional[RunResult] = field(default=None, repr=False)


def run_entry(config: RunConfig, keep_result: bool = False,
              out_dir: Optional[str] = None) -> SweepOutcome:
    """
    Run one sweep entry; failures become entries instead of exceptions.

    Args:
        config: Run configuration with the entry's kappa
        keep_result: Attach the full RunResult (only for in-process runs)
        out_dir: Write the entry's run artifacts under out_dir/<config hash>
    """
    kappa = config.kappa
    config_hash = config.config_hash()
    try:
        result = Simulation(config).run()
    except (FixedPointDivergenceError, FrozenGeometryError) as e:
        logger.warning(f"✗ kappa={kappa}: {e}")
        return SweepOutcome(SweepEntry(kappa=kappa, status='diverged', exit_code=EXIT_DIVERGED, error=str(e)),
                            config_hash=config_hash, n_modes=config.n_modes, dt=config.dt)
    except VacuumSimError as e:
        logger.warning(f"✗ kappa={kappa}: {e}")
        return SweepOutcome(SweepEntry(kappa=kappa, status='failed', exit_code=EXIT_ERROR, error=str(e)),
                            config_hash=config_hash, n_modes=config.n_modes, dt=config.dt)

    output_dir = None
    if out_dir is not None:
        store = LocalArtifactStore(out_dir, config_hash)
        write_run_artifacts(result, store, command='sweep')
        output_dir = store.run_dir

    entry = SweepEntry(
        kappa=kappa,
        status=result.status,
        exit_code=result.exit_code,
        T_valid=result.T_valid,
        iterations=result.report.iterations,
        max_ratio=result.report.max_ratio,
        E0=result.E0,
        E_max=result.E_max,
    )
    basis = result.trajectory.basis
    return SweepOutcome(
        entry=entry,
        config_hash=config_hash,
        output_dir=output_dir,
        times=result.trajectory.times,
        nodes=basis.nodes,
        weights=basis.weights,
        velocity=result.nodal_velocity(),
        n_modes=config.n_modes,
        dt=config.dt,
        result=result if keep_result else None,
    )


def _sweep_worker(config_dict: Dict[str, Any], out_dir: Optional[str] = None) -> SweepOutcome:
    """Process-pool entry point; configs travel as plain dicts."""
    return run_entry(RunConfig.from_dict(config_dict), out_dir=out_dir)


def trajectory_distance(a: SweepOutcome, b: SweepOutcome, horizon: float) -> float:
    """
    ||v_a - v_b|| in L^2(0, horizon; L^2) from nodal histories on one grid.

    Raises:
        ValueError: The outcomes were computed on different grids
    """
    if a.velocity.shape != b.velocity.shape or not np.allclose(a.times, b.times):
        raise ValueError("sweep entries use different discretizations; distances need a shared grid")
    mask = a.times <= horizon + 1e-12
    diff = a.velocity[mask] - b.velocity[mask]
    l2 = (diff ** 2) @ a.weights
    if mask.sum() < 2:
        return float(np.sqrt(l2[0]))
    return float(np.sqrt(trapezoid(l2, a.times[mask])))


def aggregate(outcomes: List[SweepOutcome]) -> SweepReport:
    """Common horizon, kappa-independence and Cauchy diagnostics."""
    report = SweepReport(entries=[o.entry for o in outcomes], outcomes=list(outcomes))
    ok = [o for o in outcomes if o.entry.status == 'ok' and o.entry.T_valid is not None]
    if not ok:
        return report

    horizons = [o.entry.T_valid for o in ok]
    report.common_horizon = float(min(horizons))
    if report.common_horizon > 0:
        report.t_valid_spread = float(max(horizons) / report.common_horizon)
        report.kappa_independent = report.t_valid_spread < KAPPA_INDEPENDENCE_FACTOR
    report.distances = [trajectory_distance(a, b, report.common_horizon) for a, b in zip(ok, ok[1:])]
    if len(report.distances) >= 2:
        report.distances_decreasing = all(d1 < d0 for d0, d1 in zip(report.distances, report.distances[1:]))
    return report


def kappa_sweep(plan: SweepPlan, workers: Optional[int] = None, keep_results: bool = False,
                out_dir: Optional[str] = None) -> SweepReport:
    """
    Run every kappa of the plan and aggregate.

    Args:
        plan: Sweep plan
        workers: Pool size; 1 runs in-process, None means the number of cores
        keep_results: Keep full RunResults (in-process runs only)
        out_dir: Write per-entry run directories under out_dir

    Returns:
        SweepReport with one entry per kappa in plan order; failed entries
        are recorded and the sweep continues

    Example:
        >>> report = kappa_sweep(SweepPlan([1e-2, 1e-3, 1e-4], 2.0, template), workers=3)
        >>> report.kappa_independent
        True
    """
    configs = plan.run_configs()
    workers = workers or os.cpu_count() or 1
    workers = max(1, min(workers, len(configs)))
    logger.info(f"Sweeping {len(configs)} kappa values with {workers} worker(s)")

    if workers == 1:
        outcomes = [run_entry(cfg, keep_result=keep_results, out_dir=out_dir) for cfg in configs]
    else:
        worker = partial(_sweep_worker, out_dir=out_dir)
        with ProcessPoolExecutor(max_workers=workers) as executor:
            outcomes = list(executor.map(worker, [cfg.to_dict() for cfg in configs]))

    report = aggregate(outcomes)
    failures = report.failures
    if failures:
        logger.warning(f"✗ Sweep finished with {len(failures)} failed entries of {len(configs)}")
    else:
        logger.info(f"✓ Sweep finished: common horizon {report.common_horizon}, "
                    f"spread {report.t_valid_spread}")
    return report
