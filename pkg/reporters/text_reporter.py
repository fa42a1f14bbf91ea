"""
Text Reporter

Generates plain-text run and sweep summaries.
"""

import logging
from typing import Optional

from models.energy import ENERGY_TERM_LABELS
from models.reports import SweepReport
from storage import ArtifactStore

logger = logging.getLogger(__name__)


class TextReporter:
    """
    Generates text-format summaries of runs and sweeps.

    Attributes:
        store: Artifact store the summaries are written to

    Example:
        >>> reporter = TextReporter(store)
        >>> report_path = reporter.generate_report(result)
    """

    def __init__(self, store: ArtifactStore):
        """
        Initialize text reporter.

        Args:
            store: Destination of the reports
        """
        self.store = store

    @staticmethod
    def _value(value: Optional[float], fmt: str = '.6g') -> str:
        return 'N/A' if value is None else format(value, fmt)

    def generate_report(self, result, filename: str = 'summary.txt') -> str:
        """
        Generate a text summary of one run.

        Args:
            result: RunResult
            filename: Report file name inside the run directory

        Returns:
            Path to generated report file
        """
        path = self.store.write_text(filename, self.format_run(result))
        logger.info(f"Generated text report: {path}")
        return path

    def generate_sweep_report(self, report: SweepReport, filename: str = 'sweep_summary.txt') -> str:
        path = self.store.write_text(filename, self.format_sweep(report))
        logger.info(f"Generated text report: {path}")
        return path

    def format_run(self, result) -> str:
        """
        Format a run as text.

        Args:
            result: RunResult

        Returns:
            Formatted text report
        """
        cfg = result.config
        report = result.report
        lines = []

        lines.append(f"Run: {cfg.config_hash()}")
        lines.append("=" * 80)
        lines.append(f"Profile: {result.profile.kind} (gamma={cfg.gamma})")
        lines.append(f"Velocity: {result.velocity.smoothness}")
        lines.append(f"kappa={cfg.kappa}  T={cfg.T_lagrangian}  dt={cfg.dt}  n_modes={cfg.n_modes}")
        lines.append(f"\nStatus: {result.status} (exit code {result.exit_code})")
        lines.append("\n" + "=" * 80)

        lines.append("\nFIXED-POINT ITERATION")
        lines.append("-" * 80)
        lines.append(f"  Iterations: {report.iterations}")
        lines.append(f"  Converged: {'yes' if report.converged else 'no'} (tol {report.tol:g})")
        lines.append(f"  Max contraction ratio: {self._value(report.max_ratio)}")
        for n, r in enumerate(report.residuals, start=1):
            lines.append(f"    r_{n}: {r:.3e}")

        lines.append("\nENERGY")
        lines.append("-" * 80)
        first, peak = result.energy[0], max(result.energy, key=lambda s: s.total)
        lines.append(f"  E(0) = M0: {first.total:.6g}")
        lines.append(f"  max E: {peak.total:.6g} at t={peak.t:.6g}")
        lines.append(f"  Bound E <= 2 M0: {'pass' if result.verdict.passed else 'FAIL'}")
        if result.verdict.first_violation_time is not None:
            lines.append(f"  First violation: t={result.verdict.first_violation_time:.6g}")
        lines.append(f"  Fitted growth constant: {result.verdict.fitted_constant:.4g}")
        lines.append(f"  T_valid: {result.T_valid:.6g}")
        lines.append(f"\n  Terms at t=0:")
        for label, value in zip(ENERGY_TERM_LABELS, first.terms):
            lines.append(f"    {label}: {self._value(value)}")

        lines.append("\nINVARIANTS")
        lines.append("-" * 80)
        summary = result.summary()
        last = result.invariants[-1]
        lines.append(f"  Momentum drift: {summary['momentum_drift']:.3e}")
        lines.append(f"  Mass-identity residual: {summary['mass_residual']:.3e}")
        lines.append(f"  Boundary at T: a={last.a:.6g}, b={last.b:.6g}")
        ratios = result.slope_ratios()
        lines.append(f"  c^2 slope ratio range: [{ratios.min():.4g}, {ratios.max():.4g}]")

        return '\n'.join(lines) + '\n'

    def format_sweep(self, report: SweepReport) -> str:
        lines = ["Kappa sweep", "=" * 80]
        for entry in report.entries:
            lines.append(f"  kappa={entry.kappa:<10g} {entry.status:<16} T_valid={self._value(entry.T_valid)}"
                         + (f"  ({entry.error})" if entry.error else ''))
        lines.append("-" * 80)
        lines.append(f"Common horizon: {self._value(report.common_horizon)}")
        lines.append(f"T_valid spread: {self._value(report.t_valid_spread)}")
        lines.append(f"Kappa independent: {report.kappa_independent}")
        lines.append(f"Distances: {', '.join(f'{d:.3e}' for d in report.distances) or 'N/A'}")
        lines.append(f"Distances decreasing: {report.distances_decreasing}")
        return '\n'.join(lines) + '\n'
