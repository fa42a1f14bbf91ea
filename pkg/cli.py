"""
Command-Line Interface for the Physical-Vacuum Euler-Poisson Simulator

Provides commands for validating run configurations, running one
simulation and sweeping kappa toward the vanishing-viscosity limit.

Exit codes:
    0  success
    1  malformed or missing config, unexpected error
    2  validation findings (printed as JSON on stdout)
    3  energy-bound violation
    4  fixed-point divergence, geometry failure or no convergence
    5  sweep finished with failed entries
"""

import os
import sys
import argparse
import logging
from dataclasses import replace
from typing import Any, Dict, List, Optional

import numpy as np
import yaml

# Add parent directory to path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

from models import (
    __version__,
    ConfigError,
    ConfigFinding,
    FixedPointDivergenceError,
    FrozenGeometryError,
    ProfileValidationError,
    RunConfig,
    RunRecord,
    SweepPlan,
    VacuumSimError,
)
from profiles import make_profile, validate_vacuum
from gravity import compute_force, check_poisson_consistency, momentum_neutrality
from continuation import Simulation, kappa_sweep, convergence_study, gamma_transform, is_integrable
from analyzers import EnergyAnalyzer
from linearized.problem import GEOMETRY_LOWER, GEOMETRY_UPPER, GEOMETRY_TOLERANCE
from reporters import CSVReporter, JSONReporter, TextReporter, write_run_artifacts, dumps
from reporters.csv_reporter import DEFAULT_FLOAT_FORMAT
from storage import create_artifact_store
from database import RunRegistry

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INVALID = 2
EXIT_BOUND_VIOLATION = 3
EXIT_DIVERGED = 4
EXIT_PARTIAL_SWEEP = 5

FORCE_MOMENTUM_TOL = 1e-10
FORCE_ENDPOINT_TOL = 1e-12
FORCE_POISSON_TOL = 1e-8

RUN_ARTIFACTS = ['manifest.json', 'trajectory.csv', 'force.csv', 'energy.csv', 'summary.txt']
SWEEP_ARTIFACTS = ['sweep_report.json', 'sweep.csv', 'sweep_summary.txt']
LADDER_ARTIFACTS = ['convergence.json', 'convergence.csv']


def load_settings(settings_path: Optional[str]) -> Dict[str, Any]:
    """Read config.yaml; a missing file means built-in defaults."""
    if not settings_path or not os.path.exists(settings_path):
        return {}
    try:
        with open(settings_path, 'r') as f:
            return yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigError(f"cannot parse settings {settings_path}: {e}") from e


def setup_logging(settings: Dict[str, Any]) -> None:
    """Configure root handlers from the `logging` section."""
    section = settings.get('logging', {}) or {}
    level = getattr(logging, str(section.get('level', 'INFO')).upper(), logging.INFO)
    fmt = section.get('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    handlers: List[logging.Handler] = []
    if section.get('console', True):
        handlers.append(logging.StreamHandler(sys.stderr))
    log_file = section.get('file')
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))
    if not handlers:
        handlers.append(logging.NullHandler())

    logging.basicConfig(level=level, format=fmt, handlers=handlers, force=True)


def load_run_config(args, settings: Dict[str, Any]) -> RunConfig:
    """Run config from --config layered over the `run` section, with CLI overrides."""
    config = RunConfig.from_file(args.config, defaults=settings.get('run') or {})
    if args.seed is not None:
        config = replace(config, seed=int(args.seed))
    if args.out:
        config = replace(config, output_dir=args.out)
    return config


def print_findings(config_path: str, findings: List[ConfigFinding]) -> None:
    """Machine-readable findings on stdout."""
    print(dumps({
        'config': config_path,
        'passed': not findings,
        'findings': [f.to_dict() for f in findings],
    }))


def profile_findings(config: RunConfig) -> List[ConfigFinding]:
    """
    Physical-vacuum, gamma-admissibility and force-identity checks of the
    configured (unmollified) initial density.
    """
    findings = []
    try:
        profile = make_profile(config.profile, {**config.profile_params, 'gamma': config.gamma},
                               validate=False)
    except VacuumSimError as e:
        return [ConfigFinding('profile', str(e))]

    vacuum = validate_vacuum(profile)
    findings.extend(ConfigFinding('vacuum', message) for message in vacuum.failures)
    if not vacuum.passed:
        return findings

    if not is_integrable(profile):
        findings.append(ConfigFinding('gamma_integrability',
                                      f'boundary weight is not integrable for gamma={config.gamma}'))
    else:
        try:
            gamma_transform(profile)
        except VacuumSimError as e:
            findings.append(ConfigFinding('gamma_transform', str(e)))

    force = compute_force(profile, config.gravity_constant)
    neutrality = abs(momentum_neutrality(force, profile))
    endpoints = abs(float(np.sum(force.evaluate(np.array([0.0, 1.0]), 0))))
    poisson = check_poisson_consistency(force, profile)
    if neutrality > FORCE_MOMENTUM_TOL:
        findings.append(ConfigFinding('force_momentum', f'|int rho0 F| = {neutrality:.3e}'))
    if endpoints > FORCE_ENDPOINT_TOL:
        findings.append(ConfigFinding('force_endpoints', f'|F(0) + F(1)| = {endpoints:.3e}'))
    if poisson > FORCE_POISSON_TOL:
        findings.append(ConfigFinding('force_poisson', f"max |F' + C rho0| = {poisson:.3e}"))
    return findings


def tolerances(config: RunConfig, analyzer: EnergyAnalyzer) -> Dict[str, Any]:
    """Per-module tolerances recorded in every manifest."""
    return {
        'fixedpoint': {'tol': config.fp_tol, 'max_iters': config.fp_max_iters,
                       'divergence_patience': config.fp_divergence_patience},
        'geometry': {'lower': GEOMETRY_LOWER, 'upper': GEOMETRY_UPPER, 'tolerance': GEOMETRY_TOLERANCE},
        'energy': {'bound_rtol': analyzer.bound_rtol, 'nodes': analyzer.n_nodes},
        'spectral': {'quadrature_factor': config.quadrature_factor,
                     'hardy_theta_nodes': config.hardy_theta_nodes},
        'force': {'momentum': FORCE_MOMENTUM_TOL, 'endpoints': FORCE_ENDPOINT_TOL,
                  'poisson': FORCE_POISSON_TOL},
    }


def open_registry(settings: Dict[str, Any], out_dir: str) -> Optional[RunRegistry]:
    section = settings.get('registry', {}) or {}
    if not section.get('enabled', True):
        return None
    path = section.get('path', 'runs.db')
    if not os.path.isabs(path):
        path = os.path.join(out_dir, path)
    return RunRegistry(path)


def run_record(config: RunConfig, command: str, status: str, exit_code: int,
               result=None, output_dir: Optional[str] = None) -> RunRecord:
    record = RunRecord(
        config_hash=config.config_hash(),
        command=command,
        status=status,
        exit_code=exit_code,
        kappa=config.kappa,
        gamma=config.gamma,
        n_modes=config.n_modes,
        dt=config.dt,
        T=config.T_lagrangian,
        output_dir=output_dir,
    )
    if result is not None:
        record.iterations = result.report.iterations
        record.max_ratio = result.report.max_ratio
        record.E0 = result.E0
        record.E_max = result.E_max
        record.T_valid = result.T_valid
    return record


def numerics(settings: Dict[str, Any]) -> Dict[str, Any]:
    return settings.get('numerics', {}) or {}


def make_analyzer(settings: Dict[str, Any]) -> EnergyAnalyzer:
    section = numerics(settings)
    analyzer = EnergyAnalyzer()
    return EnergyAnalyzer(n_nodes=int(section.get('energy_nodes', analyzer.n_nodes)),
                          bound_rtol=float(section.get('bound_rtol', analyzer.bound_rtol)))


def cmd_validate(args, settings: Dict[str, Any]) -> int:
    """Validate a run configuration without running it."""
    logger.info(f"Validating: {args.config}")
    config = load_run_config(args, settings)

    findings = config.validate()
    if not findings:
        findings = profile_findings(config)
    print_findings(args.config, findings)

    if findings:
        logger.warning(f"✗ {len(findings)} finding(s) in {args.config}")
        return EXIT_INVALID
    logger.info("✓ Configuration is valid")
    return EXIT_OK


def cmd_run(args, settings: Dict[str, Any]) -> int:
    """Run one simulation and write its artifacts."""
    config = load_run_config(args, settings)
    findings = config.validate()
    if findings:
        print_findings(args.config, findings)
        return EXIT_INVALID

    config_hash = config.config_hash()
    store = create_artifact_store(config.output_dir, config_hash, dry_run=args.dry_run)
    if args.dry_run:
        for name in RUN_ARTIFACTS:
            store.write_text(name, '')
        logger.info(f"Dry run: would write {', '.join(store.planned)}")
        return EXIT_OK

    analyzer = make_analyzer(settings)
    float_format = (settings.get('reporting', {}) or {}).get('float_format', DEFAULT_FLOAT_FORMAT)
    registry = open_registry(settings, config.output_dir)
    invocation = registry.start_invocation('run', args.config) if registry else None
    exit_code = EXIT_ERROR
    try:
        try:
            result = Simulation(config, analyzer=analyzer,
                                refine_steps=int(numerics(settings).get('refine_steps', 2))).run()
        except (FixedPointDivergenceError, FrozenGeometryError) as e:
            logger.error(f"✗ Run diverged: {e}")
            if isinstance(e, FrozenGeometryError):
                logger.error(f"  First geometry violation at t = {e.first_violation_time:.6g}; shrink T_lagrangian")
            if registry:
                registry.record_run(run_record(config, 'run', 'diverged', EXIT_DIVERGED), invocation)
            exit_code = EXIT_DIVERGED
            return exit_code
        except ProfileValidationError as e:
            print_findings(args.config, [ConfigFinding('profile', str(e))])
            exit_code = EXIT_INVALID
            return exit_code

        write_run_artifacts(result, store, command='run', tolerances=tolerances(config, analyzer),
                            float_format=float_format)
        if registry:
            registry.record_run(run_record(config, 'run', result.status, result.exit_code,
                                           result, store.run_dir), invocation)

        if result.status == 'bound_violation':
            logger.error(f"✗ Energy bound violated first at t = {result.verdict.first_violation_time:.6g} "
                         f"(sup E / M0 = {result.verdict.sup_energy / result.verdict.M0:.4g})")
        elif result.status == 'diverged':
            logger.error(f"✗ No convergence after {result.report.iterations} iterations "
                         f"(last residual {result.report.residuals[-1]:.3e})")
        else:
            logger.info(f"✓ Artifacts written to {store.run_dir}")
        exit_code = result.exit_code
        return exit_code
    finally:
        if registry:
            registry.finish_invocation(invocation, exit_code)
            registry.close()


def cmd_sweep(args, settings: Dict[str, Any]) -> int:
    """Kappa sweep and/or refinement-ladder study."""
    config = load_run_config(args, settings)
    findings = config.validate()
    if not config.sweep_kappas and not config.sweep_ladder:
        findings.append(ConfigFinding('sweep', 'sweep needs sweep_kappas or sweep_ladder'))
    if findings:
        print_findings(args.config, findings)
        return EXIT_INVALID

    store = create_artifact_store(config.output_dir, f"sweep-{config.config_hash()}", dry_run=args.dry_run)
    if args.dry_run:
        names = (SWEEP_ARTIFACTS if config.sweep_kappas else []) + (LADDER_ARTIFACTS if config.sweep_ladder else [])
        for name in names:
            store.write_text(name, '')
        logger.info(f"Dry run: would write {', '.join(store.planned)}")
        return EXIT_OK

    workers = args.workers or (settings.get('sweep', {}) or {}).get('workers')
    float_format = (settings.get('reporting', {}) or {}).get('float_format', DEFAULT_FLOAT_FORMAT)
    csv_reporter = CSVReporter(store, float_format)
    json_reporter = JSONReporter(store)
    exit_code = EXIT_OK

    registry = open_registry(settings, config.output_dir)
    invocation = registry.start_invocation('sweep', args.config) if registry else None
    try:
        if config.sweep_kappas:
            plan = SweepPlan.from_run_config(config)
            report = kappa_sweep(plan, workers=workers, out_dir=store.run_dir)
            json_reporter.write('sweep_report.json', report.to_dict())
            csv_reporter.write_sweep(report)
            TextReporter(store).generate_sweep_report(report)

            if registry:
                for entry_config, outcome in zip(plan.run_configs(), report.outcomes):
                    entry = outcome.entry
                    record = run_record(entry_config, 'sweep', entry.status, entry.exit_code,
                                        output_dir=outcome.output_dir)
                    record.iterations = entry.iterations
                    record.max_ratio = entry.max_ratio
                    record.E0 = entry.E0
                    record.E_max = entry.E_max
                    record.T_valid = entry.T_valid
                    registry.record_run(record, invocation)

            if report.failures:
                ok = len(report.entries) - len(report.failures)
                logger.warning(f"✗ {len(report.failures)} of {len(report.entries)} entries failed, {ok} succeeded")
                for entry in report.failures:
                    logger.warning(f"  kappa={entry.kappa}: {entry.status} (exit {entry.exit_code})")
                exit_code = EXIT_PARTIAL_SWEEP

        if config.sweep_ladder:
            table = convergence_study(config, config.sweep_ladder)
            json_reporter.write('convergence.json', table.to_dict())
            csv_reporter.write_convergence(table)

    finally:
        if registry:
            registry.finish_invocation(invocation, exit_code)
            registry.close()

    if exit_code == EXIT_OK:
        logger.info(f"✓ Sweep artifacts written to {store.run_dir}")
    return exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Physical-Vacuum Euler-Poisson Simulator',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
Examples:
  # Check a configuration
  python cli.py validate --config baseline.json

  # Run the baseline and write artifacts under runs/<config hash>/
  python cli.py run --config baseline.json --out runs

  # Kappa sweep on four workers
  python cli.py sweep --config sweep.json --workers 4

  # Show what a run would write
  python cli.py run --config baseline.json --dry-run
        '''
    )

    parser.add_argument('--settings', default='config.yaml', help='Path to settings file (config.yaml)')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', required=True, help='Path to run config (JSON or YAML)')
    common.add_argument('--out', help='Output directory (default: output_dir of the run config)')
    common.add_argument('--seed', type=int, help='Seed recorded in the run config')
    common.add_argument('--dry-run', action='store_true', help='Plan the artifacts without writing them')

    subparsers = parser.add_subparsers(dest='command', help='Commands')

    validate_parser = subparsers.add_parser('validate', parents=[common], help='Validate a run config')
    validate_parser.set_defaults(func=cmd_validate)

    run_parser = subparsers.add_parser('run', parents=[common], help='Run one simulation')
    run_parser.set_defaults(func=cmd_run)

    sweep_parser = subparsers.add_parser('sweep', parents=[common], help='Kappa sweep or refinement ladder')
    sweep_parser.add_argument('--workers', type=int, help='Worker processes (default: logical cores)')
    sweep_parser.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    try:
        settings = load_settings(args.settings)
        setup_logging(settings)
        logger.debug(f"vacuumsim {__version__}: {args.command} {args.config}")
        return args.func(args, settings)
    except ConfigError as e:
        logger.error(f"✗ Config error: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"Error: {e}", exc_info=True)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
