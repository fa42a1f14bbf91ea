"""
CLI Testing
Tests: validate, run and sweep commands, exit codes, dry runs, registry entries
"""

import json
import sys
from pathlib import Path

import pytest
import yaml

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from cli import (
    EXIT_ERROR,
    EXIT_INVALID,
    EXIT_DIVERGED,
    EXIT_OK,
    EXIT_PARTIAL_SWEEP,
    RUN_ARTIFACTS,
    main,
)
from database import RunRegistry
from models import RunConfig

SMALL_RUN = {'T_lagrangian': 0.02, 'dt': 1e-3, 'n_modes': 12, 'kappa': 1e-2}


@pytest.fixture
def settings(tmp_path):
    path = tmp_path / 'config.yaml'
    path.write_text(yaml.safe_dump({'logging': {'level': 'WARNING'}, 'registry': {'path': 'runs.db'}}))
    return str(path)


def write_config(tmp_path, data, name='run.json'):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def cli(settings, *args):
    return main(['--settings', settings, *args])


class TestValidate:
    def test_valid_config(self, tmp_path, settings, capsys):
        config = write_config(tmp_path, SMALL_RUN)
        assert cli(settings, 'validate', '--config', config) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report == {'config': config, 'passed': True, 'findings': []}

    def test_findings_are_reported(self, tmp_path, settings, capsys):
        config = write_config(tmp_path, {'gamma': 3.0})
        assert cli(settings, 'validate', '--config', config) == EXIT_INVALID
        report = json.loads(capsys.readouterr().out)
        assert not report['passed']
        assert 'gamma out of (1,3)' in [f['message'] for f in report['findings']]

    def test_vacuum_failure(self, tmp_path, settings, capsys):
        config = write_config(tmp_path, {'profile': 'expression', 'profile_params': {'rho0': 'x**2*(1 - x)'}})
        assert cli(settings, 'validate', '--config', config) == EXIT_INVALID
        codes = {f['code'] for f in json.loads(capsys.readouterr().out)['findings']}
        assert 'vacuum' in codes

    def test_missing_config(self, tmp_path, settings):
        assert cli(settings, 'validate', '--config', str(tmp_path / 'missing.json')) == EXIT_ERROR

    def test_malformed_config(self, tmp_path, settings):
        path = tmp_path / 'broken.json'
        path.write_text('{"kappa": ')
        assert cli(settings, 'validate', '--config', str(path)) == EXIT_ERROR

    def test_unknown_key(self, tmp_path, settings):
        config = write_config(tmp_path, {'kapa': 0.1})
        assert cli(settings, 'validate', '--config', config) == EXIT_ERROR

    def test_missing_settings_uses_defaults(self, tmp_path):
        config = write_config(tmp_path, SMALL_RUN)
        assert main(['--settings', str(tmp_path / 'nope.yaml'), 'validate', '--config', config]) == EXIT_OK


class TestRun:
    def test_dry_run_writes_nothing(self, tmp_path, settings):
        out = tmp_path / 'runs'
        config = write_config(tmp_path, SMALL_RUN)
        assert cli(settings, 'run', '--config', config, '--out', str(out), '--dry-run') == EXIT_OK
        assert not out.exists()

    def test_invalid_run_config(self, tmp_path, settings, capsys):
        config = write_config(tmp_path, {**SMALL_RUN, 'dt': 0.5})
        assert cli(settings, 'run', '--config', config, '--out', str(tmp_path / 'runs')) == EXIT_INVALID
        assert json.loads(capsys.readouterr().out)['findings']

    def test_run_writes_artifacts(self, tmp_path, settings):
        out = tmp_path / 'runs'
        config = write_config(tmp_path, SMALL_RUN)
        assert cli(settings, 'run', '--config', config, '--out', str(out), '--seed', '7') == EXIT_OK

        run_config = RunConfig.from_dict({**SMALL_RUN, 'seed': 7})
        run_dir = out / run_config.config_hash()
        assert sorted(p.name for p in run_dir.iterdir()) == sorted(RUN_ARTIFACTS)
        manifest = json.loads((run_dir / 'manifest.json').read_text())
        assert manifest['config']['seed'] == 7
        assert manifest['config_hash'] == run_config.config_hash()

        with RunRegistry(str(out / 'runs.db')) as registry:
            runs = registry.list_runs(command='run')
        assert [(r.status, r.exit_code) for r in runs] == [('ok', 0)]
        assert runs[0].output_dir == str(run_dir)

    @pytest.mark.slow
    def test_overlong_run_exits_diverged(self, tmp_path, settings):
        out = tmp_path / 'runs'
        data = {'T_lagrangian': 1.0, 'dt': 1e-2, 'n_modes': 8, 'kappa': 1e-2}
        config = write_config(tmp_path, data)
        assert cli(settings, 'run', '--config', config, '--out', str(out)) == EXIT_DIVERGED

        with RunRegistry(str(out / 'runs.db')) as registry:
            runs = registry.list_runs(command='run')
        assert [(r.status, r.exit_code) for r in runs] == [('diverged', EXIT_DIVERGED)]


class TestSweep:
    def test_needs_kappas_or_ladder(self, tmp_path, settings, capsys):
        config = write_config(tmp_path, SMALL_RUN)
        assert cli(settings, 'sweep', '--config', config, '--out', str(tmp_path / 'runs')) == EXIT_INVALID
        codes = [f['code'] for f in json.loads(capsys.readouterr().out)['findings']]
        assert codes == ['sweep']

    def test_dry_run(self, tmp_path, settings):
        out = tmp_path / 'runs'
        config = write_config(tmp_path, {**SMALL_RUN, 'sweep_kappas': [1e-2, 5e-3]})
        assert cli(settings, 'sweep', '--config', config, '--out', str(out), '--dry-run') == EXIT_OK
        assert not out.exists()

    @pytest.mark.slow
    def test_partial_sweep(self, tmp_path, settings):
        out = tmp_path / 'runs'
        data = {'T_lagrangian': 0.01, 'dt': 1e-3, 'n_modes': 8, 'kappa': 1e-2, 'sweep_kappas': [0.9, 1e-2]}
        config = write_config(tmp_path, data)
        assert cli(settings, 'sweep', '--config', config, '--out', str(out), '--workers', '1') == EXIT_PARTIAL_SWEEP

        sweep_dir = out / f"sweep-{RunConfig.from_dict(data).config_hash()}"
        report = json.loads((sweep_dir / 'sweep_report.json').read_text())
        assert [e['status'] for e in report['entries']] == ['failed', 'ok']
        assert (sweep_dir / 'sweep.csv').exists()
        assert (sweep_dir / 'sweep_summary.txt').exists()

        with RunRegistry(str(out / 'runs.db')) as registry:
            assert [r.status for r in registry.list_runs(command='sweep')] == ['failed', 'ok']
