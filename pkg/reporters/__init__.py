"""
Reporters: CSV tables, JSON manifests and plain-text summaries.
"""

from .csv_reporter import (
    CSVReporter,
    read_csv,
    ENERGY_HEADER,
    FORCE_HEADER,
    TRAJECTORY_HEADER,
    CONVERGENCE_HEADER,
    SWEEP_HEADER,
)
from .json_reporter import JSONReporter, dumps, to_jsonable
from .text_reporter import TextReporter
from .artifacts import write_run_artifacts

__all__ = [
    'CSVReporter',
    'read_csv',
    'ENERGY_HEADER',
    'FORCE_HEADER',
    'TRAJECTORY_HEADER',
    'CONVERGENCE_HEADER',
    'SWEEP_HEADER',
    'JSONReporter',
    'dumps',
    'to_jsonable',
    'TextReporter',
    'write_run_artifacts',
]
