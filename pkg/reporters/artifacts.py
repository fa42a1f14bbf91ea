"""
Run Artifacts

The fixed set of files every run leaves in its run directory.
"""

import logging
from typing import Any, Dict, List, Optional

from models import __version__
from storage import ArtifactStore
from .csv_reporter import CSVReporter, DEFAULT_FLOAT_FORMAT
from .json_reporter import JSONReporter
from .text_reporter import TextReporter

logger = logging.getLogger(__name__)


def write_run_artifacts(result, store: ArtifactStore, command: str = 'run',
                        tolerances: Optional[Dict[str, Any]] = None,
                        float_format: str = DEFAULT_FLOAT_FORMAT) -> List[str]:
    """
    Write manifest.json, trajectory.csv, force.csv, energy.csv and summary.txt.

    Args:
        result: RunResult
        store: Run-directory store
        command: CLI command recorded in the manifest
        tolerances: Per-module tolerances recorded in the manifest
        float_format: CSV float format

    Returns:
        Paths of the artifacts (planned paths for a dry-run store)
    """
    csv_reporter = CSVReporter(store, float_format)
    paths = [
        JSONReporter(store).write_manifest(result, command, __version__, tolerances),
        csv_reporter.write_trajectory(result.trajectory),
        csv_reporter.write_force(result.force),
        csv_reporter.write_energy(result.energy, result.invariants),
        TextReporter(store).generate_report(result),
    ]
    logger.debug(f"Run artifacts: {', '.join(paths)}")
    return paths
