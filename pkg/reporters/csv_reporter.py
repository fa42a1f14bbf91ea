"""
CSV Reporter

Writes trajectory, energy/invariant, sweep and convergence tables. Floats
are printed with a fixed format so identical runs give identical bytes.
"""

import csv
import io
import logging
from typing import Any, Iterable, List, Optional, Sequence

from models.force import ForceField
from models.energy import ENERGY_TERM_LABELS, EnergySnapshot, InvariantReport
from models.reports import ConvergenceTable, SweepReport
from storage import ArtifactStore

logger = logging.getLogger(__name__)

DEFAULT_FLOAT_FORMAT = '%.17g'

TRAJECTORY_HEADER = ['t', 'x', 'X', 'v', 'eta', 'eta_x']
FORCE_HEADER = ['x', 'F', 'm']
ENERGY_HEADER = (['t'] + [f'term_{i}' for i in range(1, len(ENERGY_TERM_LABELS) + 1)]
                 + ['E_total', 'momentum', 'a', 'b', 'slope_left', 'slope_right'])
CONVERGENCE_HEADER = ['n_modes', 'dt', 'error', 'ratio', 'observed_order']
SWEEP_HEADER = ['kappa', 'status', 'exit_code', 'T_valid', 'iterations', 'max_ratio', 'E0', 'E_max']


class CSVReporter:
    """
    Formats tables as CSV and hands them to an artifact store.

    Attributes:
        store: Destination of the files
        float_format: printf-style float format

    Example:
        >>> reporter = CSVReporter(LocalArtifactStore('runs', cfg.config_hash()))
        >>> reporter.write_energy(result.energy, result.invariants)
        'runs/3f2a9c0b1d4e/energy.csv'
    """

    def __init__(self, store: ArtifactStore, float_format: str = DEFAULT_FLOAT_FORMAT):
        self.store = store
        self.float_format = float_format

    @classmethod
    def from_config(cls, store: ArtifactStore, config_path: str = 'config.yaml') -> 'CSVReporter':
        """Create CSVReporter from configuration file."""
        import yaml

        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        float_format = config.get('reporting', {}).get('float_format', DEFAULT_FLOAT_FORMAT)
        return cls(store=store, float_format=float_format)

    def _format(self, value: Any) -> str:
        if value is None:
            return ''
        if isinstance(value, bool):
            return str(value).lower()
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float) or hasattr(value, 'dtype'):
            return self.float_format % float(value)
        return str(value)

    def format_rows(self, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([self._format(value) for value in row])
        return buffer.getvalue()

    def write_rows(self, name: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
        path = self.store.write_text(name, self.format_rows(header, rows))
        logger.info(f"Generated CSV report: {path}")
        return path

    def write_trajectory(self, trajectory, name: str = 'trajectory.csv') -> str:
        """One row per (time, node): t, x, X, v, eta, eta_x."""
        geometry = trajectory.geometry()
        rows: List[List[Any]] = []
        for i in range(len(trajectory.times)):
            state = trajectory.state(i, geometry)
            for j in range(len(state.x)):
                rows.append([state.t, state.x[j], state.X[j], state.v[j], state.eta[j], state.eta_x[j]])
        return self.write_rows(name, TRAJECTORY_HEADER, rows)

    def write_force(self, force: ForceField, name: str = 'force.csv') -> str:
        """Self-gravity force and cumulative mass at the force nodes."""
        return self.write_rows(name, FORCE_HEADER, force.to_rows())

    def write_energy(self, energy: Sequence[EnergySnapshot], invariants: Sequence[InvariantReport],
                     name: str = 'energy.csv') -> str:
        """Energy terms, total and invariants per stored time."""
        rows = []
        for snapshot, inv in zip(energy, invariants):
            rows.append([snapshot.t] + list(snapshot.terms)
                        + [snapshot.total, inv.momentum, inv.a, inv.b, inv.slope_left, inv.slope_right])
        return self.write_rows(name, ENERGY_HEADER, rows)

    def write_convergence(self, table: ConvergenceTable, name: str = 'convergence.csv') -> str:
        rows = [[r.n_modes, r.dt, r.error, r.ratio, r.observed_order] for r in table.rows]
        return self.write_rows(name, CONVERGENCE_HEADER, rows)

    def write_sweep(self, report: SweepReport, name: str = 'sweep.csv') -> str:
        rows = [[e.kappa, e.status, e.exit_code, e.T_valid, e.iterations, e.max_ratio, e.E0, e.E_max]
                for e in report.entries]
        return self.write_rows(name, SWEEP_HEADER, rows)


def read_csv(path: str) -> List[dict]:
    """Read a CSV written by CSVReporter into dict rows (strings)."""
    with open(path, 'r', newline='') as f:
        return list(csv.DictReader(f))
