"""
Reporter Testing
Tests: CSV tables, strict JSON output, text summaries, run artifacts, dry-run stores
"""

import json
import sys
from pathlib import Path

import numpy as np
import pytest
import yaml

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from models import ConvergenceRow, ConvergenceTable, SweepEntry, SweepReport
from reporters import (
    CONVERGENCE_HEADER,
    ENERGY_HEADER,
    FORCE_HEADER,
    SWEEP_HEADER,
    TRAJECTORY_HEADER,
    CSVReporter,
    JSONReporter,
    TextReporter,
    dumps,
    read_csv,
    to_jsonable,
    write_run_artifacts,
)
from storage import LocalArtifactStore, NullArtifactStore, artifact_store_from_config, create_artifact_store


@pytest.fixture
def sweep_report():
    return SweepReport(
        entries=[
            SweepEntry(kappa=0.9, status='failed', exit_code=1, error='mollifier radius too large'),
            SweepEntry(kappa=0.01, status='ok', T_valid=0.05, iterations=7, max_ratio=0.2, E0=1.0, E_max=1.1),
        ],
        common_horizon=0.05,
    )


class TestStores:
    def test_local_store_writes(self, tmp_path):
        store = LocalArtifactStore(str(tmp_path), 'abc123')
        path = store.write_text('notes.txt', 'hello\n')
        assert path == str(tmp_path / 'abc123' / 'notes.txt')
        assert store.exists('notes.txt')
        assert store.persistent
        assert store.list_files() == ['notes.txt']
        assert store.child('k0').run_dir == str(tmp_path / 'abc123' / 'k0')

    def test_null_store_plans(self, tmp_path):
        store = create_artifact_store(str(tmp_path), 'abc123', dry_run=True)
        assert isinstance(store, NullArtifactStore)
        store.write_text('notes.txt', 'hello\n')
        assert store.planned == [str(tmp_path / 'abc123' / 'notes.txt')]
        assert not store.persistent
        assert not store.exists('notes.txt')
        assert list(tmp_path.iterdir()) == []


class TestCSVReporter:
    def test_float_format(self):
        reporter = CSVReporter(NullArtifactStore())
        text = reporter.format_rows(['a', 'b', 'c', 'd'], [[0.1, 3, None, True], [np.float64(1 / 3), 'x', 2.5, False]])
        assert text.splitlines() == [
            'a,b,c,d',
            '0.10000000000000001,3,,true',
            '0.33333333333333331,x,2.5,false',
        ]

    def test_custom_float_format(self):
        reporter = CSVReporter(NullArtifactStore(), float_format='%.3e')
        assert reporter.format_rows(['v'], [[0.5]]).splitlines()[1] == '5.000e-01'

    def test_sweep_table(self, tmp_path, sweep_report):
        reporter = CSVReporter(LocalArtifactStore(str(tmp_path)))
        rows = read_csv(reporter.write_sweep(sweep_report))
        assert list(rows[0].keys()) == SWEEP_HEADER
        assert [r['status'] for r in rows] == ['failed', 'ok']
        assert rows[0]['T_valid'] == ''
        assert float(rows[1]['E_max']) == 1.1

    def test_convergence_table(self, tmp_path):
        table = ConvergenceTable(rows=[ConvergenceRow(32, 0.1, 4e-4), ConvergenceRow(32, 0.05, 1e-4, 4.0, 2.0)],
                                 kappa=0.1, T=0.5)
        rows = read_csv(CSVReporter(LocalArtifactStore(str(tmp_path))).write_convergence(table))
        assert list(rows[0].keys()) == CONVERGENCE_HEADER
        assert rows[0]['observed_order'] == ''
        assert float(rows[1]['observed_order']) == 2.0

    def test_headers(self):
        assert TRAJECTORY_HEADER[:4] == ['t', 'x', 'X', 'v']
        assert FORCE_HEADER == ['x', 'F', 'm']
        assert ENERGY_HEADER[1] == 'term_1'
        assert ENERGY_HEADER[12] == 'term_12'
        assert ENERGY_HEADER[13] == 'E_total'


class TestJSON:
    def test_non_finite_values(self):
        data = json.loads(dumps({'tol': float('inf'), 'nan': float('nan'), 'x': np.arange(3)}))
        assert data == {'tol': 'inf', 'nan': 'nan', 'x': [0, 1, 2]}

    def test_numpy_scalars(self):
        assert to_jsonable({1: (np.float64(0.5), np.int64(2))}) == {'1': [0.5, 2]}

    def test_sorted_keys(self, tmp_path, sweep_report):
        path = JSONReporter(LocalArtifactStore(str(tmp_path))).write('sweep_report.json', sweep_report.to_dict())
        text = Path(path).read_text()
        assert text.endswith('\n')
        assert json.loads(text)['entries'][0]['kappa'] == 0.9
        assert text.index('common_horizon') < text.index('entries')


class TestText:
    def test_sweep_summary(self, sweep_report):
        text = TextReporter(NullArtifactStore()).format_sweep(sweep_report)
        assert 'kappa=0.9' in text
        assert '(mollifier radius too large)' in text
        assert 'Common horizon: 0.05' in text
        assert 'Distances: N/A' in text


class TestRunArtifacts:
    def test_artifacts_written(self, tmp_path, baseline_result):
        store = LocalArtifactStore(str(tmp_path), baseline_result.config.config_hash())
        paths = write_run_artifacts(baseline_result, store, tolerances={'fp_tol': 1e-10})
        assert store.list_files() == ['energy.csv', 'force.csv', 'manifest.json', 'summary.txt', 'trajectory.csv']
        assert len(paths) == 5

        manifest = json.loads(Path(store.path('manifest.json')).read_text())
        assert manifest['config_hash'] == baseline_result.config.config_hash()
        assert manifest['command'] == 'run'
        assert manifest['tolerances'] == {'fp_tol': 1e-10}
        assert manifest['energy_bound']['passed'] is True

        energy = read_csv(store.path('energy.csv'))
        assert len(energy) == len(baseline_result.energy)
        assert float(energy[0]['t']) == 0.0

        trajectory = read_csv(store.path('trajectory.csv'))
        assert list(trajectory[0].keys()) == TRAJECTORY_HEADER
        assert float(trajectory[0]['eta']) == float(trajectory[0]['x'])

        force = read_csv(store.path('force.csv'))
        assert list(force[0].keys()) == FORCE_HEADER
        assert len(force) == len(baseline_result.force.x)
        assert float(force[0]['m']) > 0.0
        assert float(force[0]['F']) == pytest.approx(baseline_result.force.total_mass / 2, abs=1e-3)

        summary = Path(store.path('summary.txt')).read_text()
        assert 'Bound E <= 2 M0: pass' in summary

    def test_identical_runs_identical_bytes(self, tmp_path, baseline_result):
        first = LocalArtifactStore(str(tmp_path), 'a')
        second = LocalArtifactStore(str(tmp_path), 'b')
        write_run_artifacts(baseline_result, first)
        write_run_artifacts(baseline_result, second)
        for name in ('energy.csv', 'force.csv', 'trajectory.csv', 'manifest.json'):
            assert Path(first.path(name)).read_bytes() == Path(second.path(name)).read_bytes()

    def test_dry_run_writes_nothing(self, tmp_path, baseline_result):
        store = create_artifact_store(str(tmp_path), 'dry', dry_run=True)
        paths = write_run_artifacts(baseline_result, store)
        assert paths == store.planned
        assert not (tmp_path / 'dry').exists()


class TestFromConfig:
    def test_reporting_section(self, tmp_path):
        settings = tmp_path / 'config.yaml'
        settings.write_text(yaml.safe_dump({'reporting': {'output_dir': str(tmp_path / 'out'),
                                                          'float_format': '%.4f'}}))
        store = artifact_store_from_config(str(settings), run_name='abc123')
        assert store.run_dir == str(tmp_path / 'out' / 'abc123')
        assert isinstance(artifact_store_from_config(str(settings), dry_run=True), NullArtifactStore)

        reporter = CSVReporter.from_config(store, str(settings))
        assert reporter.format_rows(['v'], [[0.5]]).splitlines()[1] == '0.5000'

    def test_empty_settings_use_defaults(self, tmp_path):
        settings = tmp_path / 'config.yaml'
        settings.write_text('')
        assert CSVReporter.from_config(NullArtifactStore(), str(settings)).float_format == '%.17g'
