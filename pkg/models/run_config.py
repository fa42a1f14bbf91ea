"""
Run Configuration Models

Flat run configurations (JSON or YAML) with units in key names, the
fixed-point solver settings derived from them, and sweep plans.
"""

import hashlib
import json
import math
from dataclasses import dataclass, field, fields, replace, asdict
from typing import Optional, List, Dict, Any, Tuple

import yaml

from .errors import ConfigError, ParameterError

SUPPORTED_PROFILES = ('parabolic', 'sine', 'polytropic', 'expression', 'tabulated')
SUPPORTED_VELOCITIES = ('constant', 'expression', 'tabulated')
SUPPORTED_FORMULATIONS = ('omega', 'density')
MAX_COMPATIBILITY_ORDER = 2


@dataclass
class ConfigFinding:
    """A machine-readable validation finding."""

    code: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {'code': self.code, 'message': self.message}


@dataclass
class FixedPointConfig:
    """
    Settings of one Picard iteration sequence.

    Attributes:
        T: Horizon (Lagrangian time)
        dt: Time step
        n_modes: Galerkin modes
        kappa: Regularization parameter
        max_iters: Iteration cap
        tol: Residual tolerance (may be inf)
        M_bound: Optional bound of the admissible set C_T(M)
        divergence_patience: Consecutive ratios >= 1 tolerated before giving up
        quadrature_factor: Quadrature nodes per mode
        hardy_theta_nodes: Minimum theta nodes of the Hardy quotient rule
    """

    T: float
    dt: float
    n_modes: int
    kappa: float
    max_iters: int = 30
    tol: float = 1e-8
    M_bound: Optional[float] = None
    divergence_patience: int = 3
    quadrature_factor: int = 4
    hardy_theta_nodes: int = 64

    def __post_init__(self):
        if not (self.T > 0 and self.dt > 0 and self.kappa > 0 and self.tol > 0):
            raise ParameterError("T, dt, kappa and tol must be positive")
        if self.dt > self.T:
            raise ParameterError(f"dt={self.dt} exceeds the horizon T={self.T}")
        if self.n_modes < 1 or self.max_iters < 1:
            raise ParameterError("n_modes and max_iters must be at least 1")

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.T / self.dt)))


@dataclass
class RunConfig:
    """
    One simulation run.

    Key names carry their units where a unit applies (`T_lagrangian` is
    measured in Lagrangian time). Ranges are checked by validate(), which
    returns findings instead of raising so the CLI can report all of them.

    Example:
        >>> cfg = RunConfig.from_file('baseline.json')
        >>> cfg.validate()
        []
    """

    profile: str = 'parabolic'
    profile_params: Dict[str, Any] = field(default_factory=dict)
    velocity: str = 'constant'
    velocity_params: Dict[str, Any] = field(default_factory=lambda: {'value': 0.0})
    gamma: float = 2.0
    kappa: float = 1e-2
    T_lagrangian: float = 0.05
    dt: float = 1e-3
    n_modes: int = 24
    fp_tol: float = 1e-8
    fp_max_iters: int = 30
    fp_divergence_patience: int = 3
    M_bound: Optional[float] = None
    mollify: bool = True
    formulation: str = 'omega'
    gravity_constant: float = 1.0
    k_max: int = 2
    quadrature_factor: int = 4
    hardy_theta_nodes: int = 64
    seed: int = 0
    output_dir: str = 'runs'
    sweep_kappas: List[float] = field(default_factory=list)
    sweep_ladder: List[Tuple[int, float]] = field(default_factory=list)

    _FLOATS = ('gamma', 'kappa', 'T_lagrangian', 'dt', 'fp_tol', 'gravity_constant')
    _INTS = ('n_modes', 'fp_max_iters', 'fp_divergence_patience', 'k_max',
             'quadrature_factor', 'hardy_theta_nodes', 'seed')

    @classmethod
    def from_dict(cls, data: Dict[str, Any],
                  defaults: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        """
        Build a config from a flat mapping layered over optional defaults.

        Raises:
            ConfigError: Unknown keys or values of the wrong type
        """
        if not isinstance(data, dict):
            raise ConfigError("run config must be a mapping of keys to values")
        merged = dict(defaults or {})
        merged.update(data)

        known = {f.name for f in fields(cls)}
        unknown = sorted(set(merged) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

        try:
            for key in cls._FLOATS:
                if key in merged:
                    merged[key] = float(merged[key])
            for key in cls._INTS:
                if key in merged:
                    merged[key] = int(merged[key])
            if merged.get('M_bound') is not None:
                merged['M_bound'] = float(merged['M_bound'])
            if 'sweep_kappas' in merged:
                merged['sweep_kappas'] = [float(k) for k in merged['sweep_kappas']]
            if 'sweep_ladder' in merged:
                merged['sweep_ladder'] = [(int(n), float(dt)) for n, dt in merged['sweep_ladder']]
        except (TypeError, ValueError) as e:
            raise ConfigError(f"malformed config value: {e}") from e

        for key in ('profile_params', 'velocity_params'):
            if key in merged and not isinstance(merged[key], dict):
                raise ConfigError(f"{key} must be a mapping")
        return cls(**merged)

    @classmethod
    def from_file(cls, config_path: str,
                  defaults: Optional[Dict[str, Any]] = None) -> 'RunConfig':
        """
        Load a run config from JSON or YAML (JSON is valid YAML).

        Args:
            config_path: Path to the config file
            defaults: Optional defaults, usually the `run` section of config.yaml

        Raises:
            ConfigError: Missing, unreadable or malformed file
        """
        try:
            with open(config_path, 'r') as f:
                data = yaml.safe_load(f)
        except OSError as e:
            raise ConfigError(f"cannot read config {config_path}: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigError(f"cannot parse config {config_path}: {e}") from e
        return cls.from_dict(data, defaults)

    def validate(self) -> List[ConfigFinding]:
        """Check every range constraint of the downstream modules."""
        findings = []

        def add(code: str, message: str):
            findings.append(ConfigFinding(code, message))

        if not (1.0 < self.gamma < 3.0):
            add('gamma_range', 'gamma out of (1,3)')
        if not (0.0 < self.kappa < 1.0):
            add('kappa_range', 'kappa out of (0,1)')
        if not self.T_lagrangian > 0:
            add('horizon', 'T_lagrangian must be positive')
        if not self.dt > 0 or self.dt > self.T_lagrangian:
            add('time_step', 'dt must satisfy 0 < dt <= T_lagrangian')
        if self.n_modes < 1:
            add('n_modes', 'n_modes must be at least 1')
        if not self.fp_tol > 0:
            add('fp_tol', 'fp_tol must be positive')
        if self.fp_max_iters < 1:
            add('fp_max_iters', 'fp_max_iters must be at least 1')
        if self.M_bound is not None and not self.M_bound > 0:
            add('M_bound', 'M_bound must be positive')
        if self.profile not in SUPPORTED_PROFILES:
            add('profile_kind', f"unknown profile '{self.profile}'")
        if self.velocity not in SUPPORTED_VELOCITIES:
            add('velocity_kind', f"unknown velocity '{self.velocity}'")
        if self.formulation not in SUPPORTED_FORMULATIONS:
            add('formulation', f"unknown formulation '{self.formulation}'")
        elif self.formulation == 'density' and self.gamma != 2.0:
            add('formulation', 'density formulation requires gamma = 2')
        if not (0 <= self.k_max <= MAX_COMPATIBILITY_ORDER):
            add('k_max', f'k_max must lie in [0, {MAX_COMPATIBILITY_ORDER}]')
        if self.quadrature_factor < 2:
            add('quadrature_factor', 'quadrature_factor must be at least 2')
        if self.hardy_theta_nodes < 8:
            add('hardy_theta_nodes', 'hardy_theta_nodes must be at least 8')
        if not self.gravity_constant > 0:
            add('gravity_constant', 'gravity_constant must be positive')
        if self.sweep_kappas:
            ks = self.sweep_kappas
            if any(k <= 0 for k in ks):
                add('sweep_kappas', 'sweep kappas must be positive')
            if any(b >= a for a, b in zip(ks, ks[1:])):
                add('sweep_kappas', 'sweep kappas must be strictly decreasing')
        for n, dt in self.sweep_ladder:
            if n < 1 or not dt > 0:
                add('sweep_ladder', f'invalid ladder rung ({n}, {dt})')
        return findings

    def fixed_point_config(self) -> FixedPointConfig:
        return FixedPointConfig(
            T=self.T_lagrangian,
            dt=self.dt,
            n_modes=self.n_modes,
            kappa=self.kappa,
            max_iters=self.fp_max_iters,
            tol=self.fp_tol,
            M_bound=self.M_bound,
            divergence_patience=self.fp_divergence_patience,
            quadrature_factor=self.quadrature_factor,
            hardy_theta_nodes=self.hardy_theta_nodes,
        )

    def with_kappa(self, kappa: float) -> 'RunConfig':
        return replace(self, kappa=float(kappa))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['sweep_ladder'] = [list(rung) for rung in self.sweep_ladder]
        if math.isinf(self.fp_tol):
            data['fp_tol'] = 'inf'
        return data

    def config_hash(self) -> str:
        """Short SHA-256 of the canonical JSON form (output_dir excluded)."""
        data = self.to_dict()
        data.pop('output_dir', None)
        canonical = json.dumps(data, sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:12]


@dataclass
class SweepPlan:
    """
    A kappa sweep toward the vanishing-viscosity limit.

    Attributes:
        kappas: Strictly decreasing positive values
        gamma: Adiabatic index shared by all runs
        template: Run configuration the kappas are substituted into
        ladder: Optional (n_modes, dt) refinement ladder
    """

    kappas: List[float]
    gamma: float
    template: RunConfig
    ladder: List[Tuple[int, float]] = field(default_factory=list)

    def __post_init__(self):
        if not self.kappas:
            raise ParameterError("a sweep needs at least one kappa")
        if any(k <= 0 for k in self.kappas):
            raise ParameterError("sweep kappas must be positive")
        if any(b >= a for a, b in zip(self.kappas, self.kappas[1:])):
            raise ParameterError("sweep kappas must be strictly decreasing")
        if not (1.0 < self.gamma < 3.0):
            raise ParameterError("gamma out of (1,3)")

    @classmethod
    def from_run_config(cls, config: RunConfig) -> 'SweepPlan':
        return cls(kappas=list(config.sweep_kappas), gamma=config.gamma,
                   template=config, ladder=list(config.sweep_ladder))

    def run_configs(self) -> List[RunConfig]:
        return [replace(self.template, kappa=k, gamma=self.gamma) for k in self.kappas]
