"""
Run Record Model

One row of the run registry.
"""

from dataclasses import dataclass
from datetime import datetime
from typing import Optional, Dict, Any


@dataclass
class RunRecord:
    """
    Summary of one run or sweep entry as stored in the registry.

    Attributes:
        id: Registry primary key
        config_hash: Hash of the run configuration
        command: CLI command that produced the run ('run' or 'sweep')
        status: 'ok', 'bound_violation', 'diverged', 'failed'
        exit_code: Exit code of the run
        kappa: Regularization parameter
        gamma: Adiabatic index
        n_modes: Galerkin modes
        dt: Time step
        T: Horizon
        iterations: Picard iterations
        max_ratio: Largest contraction ratio
        E0: Energy at t = 0
        E_max: Largest energy on the horizon
        T_valid: Validity horizon
        output_dir: Where the artifacts were written
        created_at: Insertion time
    """

    config_hash: str
    command: str
    status: str
    exit_code: int = 0
    kappa: Optional[float] = None
    gamma: Optional[float] = None
    n_modes: Optional[int] = None
    dt: Optional[float] = None
    T: Optional[float] = None
    iterations: Optional[int] = None
    max_ratio: Optional[float] = None
    E0: Optional[float] = None
    E_max: Optional[float] = None
    T_valid: Optional[float] = None
    output_dir: Optional[str] = None
    id: Optional[int] = None
    created_at: Optional[datetime] = None

    @classmethod
    def from_row(cls, row) -> 'RunRecord':
        """Build from a sqlite3.Row."""
        data = dict(row)
        created = data.get('created_at')
        if isinstance(created, str):
            data['created_at'] = datetime.fromisoformat(created)
        return cls(**data)

    def to_dict(self) -> Dict[str, Any]:
        data = dict(self.__dict__)
        if self.created_at is not None:
            data['created_at'] = self.created_at.isoformat()
        return data

    def __repr__(self) -> str:
        return (f"RunRecord(id={self.id}, command='{self.command}', "
                f"status='{self.status}', kappa={self.kappa})")
