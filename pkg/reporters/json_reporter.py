"""
JSON Reporter

Run manifests, convergence reports and sweep reports as JSON. Non-finite
floats are written as strings so the output stays strict JSON.
"""

import json
import logging
import math
from typing import Any, Dict, Optional

import numpy as np

from storage import ArtifactStore

logger = logging.getLogger(__name__)


def to_jsonable(value: Any) -> Any:
    """Recursively convert numpy scalars/arrays and non-finite floats."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def dumps(data: Any) -> str:
    return json.dumps(to_jsonable(data), indent=2, sort_keys=True, allow_nan=False) + '\n'


class JSONReporter:
    """
    Writes JSON documents through an artifact store.

    Example:
        >>> JSONReporter(store).write('sweep_report.json', report.to_dict())
        'runs/3f2a9c0b1d4e/sweep_report.json'
    """

    def __init__(self, store: ArtifactStore):
        self.store = store

    def write(self, name: str, data: Any) -> str:
        path = self.store.write_text(name, dumps(data))
        logger.info(f"Generated JSON report: {path}")
        return path

    def write_manifest(self, result, command: str, code_version: str,
                       tolerances: Optional[Dict[str, Any]] = None,
                       name: str = 'manifest.json') -> str:
        """
        Manifest of one run: config and its hash, code version, tolerances,
        initial data, convergence report and energy-bound verdict.
        """
        config = result.config
        manifest = {
            'command': command,
            'config_hash': config.config_hash(),
            'code_version': code_version,
            'config': config.to_dict(),
            'tolerances': tolerances or {},
            'profile': result.profile.to_dict(),
            'velocity': result.velocity.to_dict(),
            'weight': result.weight.to_dict(),
            'force': {'total_mass': result.force.total_mass, 'C_poisson': result.force.C_poisson},
            'compatibility': result.compatibility.to_dict(),
            'convergence': result.report.to_dict(),
            'energy_bound': result.verdict.to_dict(),
            'summary': result.summary(),
        }
        return self.write(name, manifest)
