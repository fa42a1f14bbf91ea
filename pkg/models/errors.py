"""
Error Types

Exception hierarchy shared by every package of the simulator. Callers that
only need to know "something in the simulation failed" catch
VacuumSimError; the CLI maps the concrete subclasses to exit codes.
"""

from typing import Any, Optional


class VacuumSimError(Exception):
    """Base class for all simulator errors."""


class ParameterError(VacuumSimError, ValueError):
    """A numeric parameter lies outside its admissible range."""


class ConfigError(ParameterError):
    """
    A run configuration is unreadable or structurally malformed.

    Attributes:
        findings: Optional list of machine-readable findings
    """

    def __init__(self, message: str, findings: Optional[list] = None):
        super().__init__(message)
        self.findings = findings or []


class ProfileValidationError(VacuumSimError, ValueError):
    """Initial data violates the physical-vacuum invariants."""


class GammaAdmissibilityError(ProfileValidationError):
    """Adiabatic index outside the open interval (1, 3)."""


class ContractError(VacuumSimError):
    """An operation was called with inputs that break its contract."""


class HardyContractError(ContractError):
    """Hardy quotient requested for a field that does not vanish on the boundary."""


class EmbeddingContractError(ContractError):
    """Weighted norm vanished while the fractional norm did not."""


class UnsupportedOrderError(VacuumSimError):
    """Requested compatibility order exceeds the configured maximum."""


class InsufficientHistoryError(VacuumSimError, ValueError):
    """Too few stored values for the requested statistic or derivative."""


class FrozenGeometryError(VacuumSimError):
    """
    The flow map left the admissible set 1/2 <= eta' <= 3/2 or lost monotonicity.

    Attributes:
        first_violation_time: Earliest time at which the bound fails
    """

    def __init__(self, message: str, first_violation_time: float):
        super().__init__(message)
        self.first_violation_time = first_violation_time


class SolverError(VacuumSimError):
    """The Galerkin linear algebra failed."""


class StepRejectedError(SolverError):
    """An implicit step could not reach the residual tolerance, even after substepping."""


class FixedPointDivergenceError(VacuumSimError):
    """
    The Picard iteration stopped contracting.

    Attributes:
        report: ConvergenceReport collected up to the failure
    """

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
