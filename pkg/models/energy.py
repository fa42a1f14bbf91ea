"""
Energy Models

Snapshots of the higher-order energy functional, physical invariants, and
the verdict of the energy-bound monitor.
"""

from dataclasses import dataclass, field
from typing import Optional, List, Dict, Any


ENERGY_TERM_LABELS = (
    'v_H2',                # ||v||_{H^2}
    'dt1v_H3/2',           # ||d_t v||_{H^{3/2}}
    'dt2v_H1',             # ||d_t^2 v||_{H^1}
    'dt3v_H1/2',           # ||d_t^3 v||_{H^{1/2}}
    'dt4v_L2',             # ||d_t^4 v||_{L^2}
    'rho0_v_H3',           # ||rho0 v||_{H^3}
    'rho0_dt2v_H2',        # ||rho0 d_t^2 v||_{H^2}
    'rho0_dt4v_H1',        # ||rho0 d_t^4 v||_{H^1}
    'sqrt_rho0_dt1_dx2v',  # ||sqrt(rho0) d_t d_x^2 v||
    'rho0_32_dt1_dx3v',    # ||rho0^{3/2} d_t d_x^3 v||
    'sqrt_rho0_dt3_dx1v',  # ||sqrt(rho0) d_t^3 d_x v||
    'rho0_32_dt3_dx2v',    # ||rho0^{3/2} d_t^3 d_x^2 v||
)


@dataclass
class EnergySnapshot:
    """
    All squared-norm terms of E(t) at one time.

    Attributes:
        t: Time
        terms: One value per ENERGY_TERM_LABELS entry; None when omitted
        total: Sum of the available terms
        partial: True when some terms were omitted for lack of history
        omitted: Labels of omitted terms
    """

    t: float
    terms: List[Optional[float]]
    total: float
    partial: bool = False
    omitted: List[str] = field(default_factory=list)

    @classmethod
    def from_terms(cls, t: float, terms: List[Optional[float]]) -> 'EnergySnapshot':
        """Build a snapshot, summing available terms and flagging missing ones."""
        omitted = [label for label, value in zip(ENERGY_TERM_LABELS, terms) if value is None]
        total = float(sum(value for value in terms if value is not None))
        return cls(t=float(t), terms=list(terms), total=total,
                   partial=bool(omitted), omitted=omitted)

    def term(self, label: str) -> Optional[float]:
        return self.terms[ENERGY_TERM_LABELS.index(label)]

    def to_dict(self) -> Dict[str, Any]:
        return {
            't': self.t,
            'terms': dict(zip(ENERGY_TERM_LABELS, self.terms)),
            'total': self.total,
            'partial': self.partial,
            'omitted': list(self.omitted),
        }


@dataclass
class InvariantReport:
    """
    Physical invariants of a trajectory at one time.

    Attributes:
        t: Time
        momentum: Total momentum int rho0 v
        mass: Physical mass int f eta' with f = rho0 / eta'
        a: Left boundary position eta(0, t)
        b: Right boundary position eta(1, t)
        speed_left: Boundary speed v(0, t)
        speed_right: Boundary speed v(1, t)
        slope_left: d(c^2)/d(eta) at the left boundary
        slope_right: d(c^2)/d(eta) at the right boundary
        mass_residual: sup |f eta' - rho0|
    """

    t: float
    momentum: float
    mass: float
    a: float
    b: float
    speed_left: float
    speed_right: float
    slope_left: float
    slope_right: float
    mass_residual: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass
class BoundVerdict:
    """
    Outcome of checking sup E(t) <= 2 M0.

    Attributes:
        passed: True when every snapshot satisfies the bound
        M0: Reference energy
        threshold: 2 * M0
        first_violation_time: Time of the first snapshot above the threshold
        sup_energy: Largest total energy in the history
        fitted_constant: Least-squares C in E(t) - M0 = C t sup E
    """

    passed: bool
    M0: float
    threshold: float
    first_violation_time: Optional[float]
    sup_energy: float
    fitted_constant: float

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)
