"""
Energy Analyzer

Measures the higher-order energy E(t) of a trajectory, the physical
invariants (momentum, mass identity, boundary motion, boundary slope of the
sound speed) and checks the energy bound sup E <= 2 M0.

Spatial norms are evaluated on a two-panel Gauss rule from recovered
velocity jets. Time derivatives come from repeated second-order finite
differences of the coefficient history; at t = 0 the compatibility fields
u_0..u_K replace them. For gamma != 2 the weights of the weighted terms are
the vacuum weight omega0, which is the density itself when gamma = 2.
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from models.energy import BoundVerdict, EnergySnapshot, InvariantReport
from models.errors import InsufficientHistoryError, ParameterError
from profiles.compatibility import CompatibilityData
from spectral.hardy import default_theta_nodes
from spectral.jets import evaluate_jet, leibniz_product
from spectral.norms import DEFAULT_NORM_NODES, default_rule, jet_norm_sq
from linearized.recovery import VelocityRecovery

logger = logging.getLogger(__name__)

MAX_TIME_ORDER = 4
# spatial derivative order of d_t^s v each term needs
JET_ORDERS = (3, 3, 2, 2, 1)


def time_derivatives(coefficients: np.ndarray, times: np.ndarray,
                     max_order: int = MAX_TIME_ORDER) -> List[Optional[np.ndarray]]:
    """
    Coefficient histories of d_t^s X for s = 0..max_order.

    Order s needs at least max(3, s + 2) stored levels; missing orders are None.
    """
    result: List[Optional[np.ndarray]] = [np.asarray(coefficients, dtype=float)]
    current = result[0]
    for s in range(1, max_order + 1):
        if current is None or len(times) < required_levels(s):
            result.append(None)
            current = None
            continue
        current = np.gradient(current, times, axis=0, edge_order=2)
        result.append(current)
    return result


def required_levels(s: int) -> int:
    return max(3, s + 2) if s > 0 else 1


class EnergyAnalyzer:
    """
    Evaluates energy snapshots and invariants of trajectories.

    Attributes:
        n_nodes: Gauss nodes of the spatial norms
        bound_rtol: Relative slack of the 2 M0 threshold

    Example:
        >>> analyzer = EnergyAnalyzer.from_config('config.yaml')
        >>> history = analyzer.energy_history(trajectory, compat)
        >>> analyzer.check_bound(history, history[0].total).passed
        True
    """

    def __init__(self, n_nodes: int = DEFAULT_NORM_NODES, bound_rtol: float = 1e-12):
        self.n_nodes = int(n_nodes)
        self.bound_rtol = float(bound_rtol)
        self.nodes, self.weights = default_rule(self.n_nodes)
        self._recoveries: Dict[Tuple[int, int], VelocityRecovery] = {}

    @classmethod
    def from_config(cls, config_path: str = 'config.yaml') -> 'EnergyAnalyzer':
        """Create EnergyAnalyzer from configuration file."""
        import yaml

        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        numerics = config.get('numerics', {})
        return cls(
            n_nodes=numerics.get('energy_nodes', DEFAULT_NORM_NODES),
            bound_rtol=numerics.get('bound_rtol', 1e-12),
        )

    def _recovery(self, trajectory) -> VelocityRecovery:
        key = (id(trajectory.basis), id(trajectory.weight))
        if key not in self._recoveries:
            n_theta = max(trajectory.recovery.n_theta, default_theta_nodes(trajectory.basis.n_modes))
            self._recoveries[key] = VelocityRecovery(
                trajectory.basis, trajectory.weight, self.nodes, max_order=3, n_theta=n_theta)
        return self._recoveries[key]

    def _index(self, trajectory, t: float) -> int:
        i = int(np.argmin(np.abs(trajectory.times - t)))
        step = trajectory.times[1] - trajectory.times[0] if len(trajectory.times) > 1 else 1.0
        if abs(trajectory.times[i] - t) > 1e-9 * max(1.0, abs(step)):
            raise ParameterError(f"t={t} is not a stored time of the trajectory")
        return i

    def _jets(self, trajectory, i: int, derivatives: Sequence[Optional[np.ndarray]],
              compatibility: Optional[CompatibilityData]) -> List[Optional[np.ndarray]]:
        recovery = self._recovery(trajectory)
        jets: List[Optional[np.ndarray]] = []
        for s, order in enumerate(JET_ORDERS):
            if i == 0 and compatibility is not None and s <= compatibility.order:
                jets.append(compatibility.jet(s, self.nodes, order))
            elif derivatives[s] is None:
                jets.append(None)
            else:
                jets.append(recovery.jet(derivatives[s][i], order))
        return jets

    def terms_from_jets(self, jets: Sequence[Optional[np.ndarray]], weight_jet: np.ndarray) -> List[Optional[float]]:
        """
        The twelve energy terms from velocity jets of d_t^s v, s = 0..4.

        Args:
            jets: Jet of d_t^s v at the analyzer nodes, or None when unavailable
            weight_jet: Jet (0..3) of the weight at the analyzer nodes

        Returns:
            Term values in ENERGY_TERM_LABELS order
        """
        x, w = self.nodes, self.weights
        omega = weight_jet[0]
        J0, J1, J2, J3, J4 = jets

        def norm(jet, s):
            return None if jet is None else jet_norm_sq(jet, s, x, w)

        def weighted(jet, s):
            if jet is None:
                return None
            return jet_norm_sq(leibniz_product(weight_jet, jet[:int(s) + 1]), s, x, w)

        def layer(jet, k, power):
            return None if jet is None else float(w @ (omega ** power * jet[k] ** 2))

        return [
            norm(J0, 2.0),
            norm(J1, 1.5),
            norm(J2, 1.0),
            norm(J3, 0.5),
            norm(J4, 0.0),
            weighted(J0, 3.0),
            weighted(J2, 2.0),
            weighted(J4, 1.0),
            layer(J1, 2, 1.0),
            layer(J1, 3, 3.0),
            layer(J3, 1, 1.0),
            layer(J3, 2, 3.0),
        ]

    def weight_jet(self, trajectory) -> np.ndarray:
        return evaluate_jet(trajectory.weight.evaluate, self.nodes, 3)

    def eval_energy(self, trajectory, compatibility: Optional[CompatibilityData], t: float,
                    derivatives: Optional[Sequence[Optional[np.ndarray]]] = None) -> EnergySnapshot:
        """
        Energy snapshot at a stored time.

        Args:
            trajectory: Trajectory
            compatibility: Fields u_0..u_K used at t = 0 (None to use the history only)
            t: Stored time
            derivatives: Precomputed output of time_derivatives

        Returns:
            EnergySnapshot, flagged partial when some orders lack history
        """
        i = self._index(trajectory, t)
        if derivatives is None:
            derivatives = time_derivatives(trajectory.coefficients, trajectory.times)
        jets = self._jets(trajectory, i, derivatives, compatibility)
        snapshot = EnergySnapshot.from_terms(trajectory.times[i], self.terms_from_jets(jets, self.weight_jet(trajectory)))
        if snapshot.partial:
            logger.debug(f"Partial energy at t={snapshot.t:.6g}: omitted {', '.join(snapshot.omitted)}")
        return snapshot

    def energy_history(self, trajectory, compatibility: Optional[CompatibilityData] = None) -> List[EnergySnapshot]:
        """Snapshots at every stored time."""
        derivatives = time_derivatives(trajectory.coefficients, trajectory.times)
        weight_jet = self.weight_jet(trajectory)
        history = []
        for i, t in enumerate(trajectory.times):
            jets = self._jets(trajectory, i, derivatives, compatibility)
            history.append(EnergySnapshot.from_terms(t, self.terms_from_jets(jets, weight_jet)))
        logger.info(f"✓ Energy history: {len(history)} snapshots, "
                    f"E(0) = {history[0].total:.6g}, max E = {max(s.total for s in history):.6g}")
        return history

    def check_bound(self, history: Sequence[EnergySnapshot], M0: float) -> BoundVerdict:
        return check_bound(history, M0, self.bound_rtol)

    def momentum(self, trajectory, t: float) -> float:
        return momentum(trajectory, t)

    def invariants(self, trajectory, t: float) -> InvariantReport:
        return invariants(trajectory, t)


def check_bound(history: Sequence[EnergySnapshot], M0: float, rtol: float = 1e-12) -> BoundVerdict:
    """
    Check sup E(t) <= 2 M0 and fit E(t) - M0 = C t sup E.

    Args:
        history: Energy snapshots in time order
        M0: Reference energy (E(0) by convention)
        rtol: Relative slack of the threshold

    Returns:
        BoundVerdict with the first violating snapshot time

    Example:
        >>> check_bound([EnergySnapshot.from_terms(t, [1.0]) for t in (0, 0.01)], 1.0).passed
        True
    """
    if not history:
        raise InsufficientHistoryError("energy bound check needs at least one snapshot")
    if M0 < 0:
        raise ParameterError(f"M0 must be nonnegative, got {M0}")
    threshold = 2.0 * M0
    times = np.array([s.t for s in history])
    energies = np.array([s.total for s in history])
    above = np.flatnonzero(energies > threshold * (1.0 + rtol) + 1e-300)
    first = float(times[above[0]]) if len(above) else None

    sup_energy = float(np.max(energies))
    design = times * sup_energy
    denominator = float(design @ design)
    fitted = float(design @ (energies - M0) / denominator) if denominator > 0 else 0.0

    if first is None:
        logger.info(f"✓ Energy bound holds: sup E = {sup_energy:.6g} <= 2 M0 = {threshold:.6g}")
    else:
        logger.warning(f"✗ Energy bound violated at t={first:.6g}: sup E = {sup_energy:.6g} > {threshold:.6g}")
    return BoundVerdict(
        passed=first is None,
        M0=float(M0),
        threshold=threshold,
        first_violation_time=first,
        sup_energy=sup_energy,
        fitted_constant=fitted,
    )


def momentum(trajectory, t: float) -> float:
    """Total momentum int rho0 v at a stored time, by quadrature at the basis nodes."""
    i = int(np.argmin(np.abs(trajectory.times - t)))
    basis = trajectory.basis
    rho = np.asarray(trajectory.profile.density(basis.nodes, 0), dtype=float)
    return float(basis.weights @ (rho * trajectory.nodal_velocity(0)[i]))


def boundary_motion(trajectory) -> Tuple[np.ndarray, np.ndarray]:
    """
    Boundary positions and deformation gradients over time.

    Returns:
        Tuple (eta, eta_x) of arrays (n_times, 2) for x = 0 and x = 1
    """
    v = trajectory.velocity(0)[:, [0, -1]]
    v_x = trajectory.velocity(1)[:, [0, -1]]
    eta = np.array([0.0, 1.0]) + cumulative_trapezoid(v, trajectory.times, axis=0, initial=0.0)
    eta_x = 1.0 + cumulative_trapezoid(v_x, trajectory.times, axis=0, initial=0.0)
    return eta, eta_x


def invariants(trajectory, t: float, geometry=None, boundary=None) -> InvariantReport:
    """
    Physical invariants at a stored time.

    The density in the moving frame is f = rho0 / eta'; the sound speed
    squared c^2 = gamma (f)^(gamma-1) has the boundary slope
    gamma omega0' / eta'^gamma with respect to eta.

    Args:
        trajectory: Trajectory
        t: Stored time
        geometry: Optional precomputed flow map of the trajectory
        boundary: Optional precomputed output of boundary_motion

    Returns:
        InvariantReport
    """
    i = int(np.argmin(np.abs(trajectory.times - t)))
    basis = trajectory.basis
    profile = trajectory.profile
    geometry = geometry if geometry is not None else trajectory.geometry()
    eta_b, eta_x_b = boundary if boundary is not None else boundary_motion(trajectory)

    rho = np.asarray(profile.density(basis.nodes, 0), dtype=float)
    eta_x = geometry.eta_x[i]
    f = rho / eta_x
    gamma = profile.gamma
    omega_x = np.asarray(profile.omega(np.array([0.0, 1.0]), 1), dtype=float)
    slopes = gamma * omega_x / eta_x_b[i] ** gamma
    speeds = trajectory.boundary_velocity()[i]

    return InvariantReport(
        t=float(trajectory.times[i]),
        momentum=momentum(trajectory, trajectory.times[i]),
        mass=float(basis.weights @ (f * eta_x)),
        a=float(eta_b[i, 0]),
        b=float(eta_b[i, 1]),
        speed_left=float(speeds[0]),
        speed_right=float(speeds[1]),
        slope_left=float(slopes[0]),
        slope_right=float(slopes[1]),
        mass_residual=float(np.max(np.abs(f * eta_x - rho))),
    )


def invariant_history(trajectory) -> List[InvariantReport]:
    """InvariantReport at every stored time."""
    geometry = trajectory.geometry()
    boundary = boundary_motion(trajectory)
    return [invariants(trajectory, t, geometry, boundary) for t in trajectory.times]


def eval_energy(trajectory, compatibility: Optional[CompatibilityData], t: float,
                n_nodes: int = DEFAULT_NORM_NODES) -> EnergySnapshot:
    """Energy snapshot with a throwaway analyzer."""
    return EnergyAnalyzer(n_nodes).eval_energy(trajectory, compatibility, t)
