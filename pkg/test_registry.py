"""
Run Registry Testing
Tests: invocations, run records, filtering, configuration
"""

import sys
from datetime import datetime
from pathlib import Path

import pytest
import yaml

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from database import RunRegistry
from models import RunRecord


@pytest.fixture
def registry():
    registry = RunRegistry(':memory:')
    yield registry
    registry.close()


def record(config_hash='3f2a9c0b1d4e', command='run', status='ok', **kwargs):
    return RunRecord(config_hash=config_hash, command=command, status=status, **kwargs)


class TestInvocations:
    def test_start_and_finish(self, registry):
        invocation_id = registry.start_invocation('sweep', 'sweep.yaml')
        registry.finish_invocation(invocation_id, 5)
        with registry.get_cursor() as cursor:
            cursor.execute("SELECT command, config_path, exit_code FROM invocations WHERE id = ?", (invocation_id,))
            row = cursor.fetchone()
        assert tuple(row) == ('sweep', 'sweep.yaml', 5)

    def test_runs_reference_invocation(self, registry):
        invocation_id = registry.start_invocation('run')
        run_id = registry.record_run(record(), invocation_id)
        with registry.get_cursor() as cursor:
            cursor.execute("SELECT invocation_id FROM runs WHERE id = ?", (run_id,))
            assert cursor.fetchone()[0] == invocation_id


class TestRuns:
    def test_record_and_get(self, registry):
        run_id = registry.record_run(record(kappa=0.01, gamma=2.0, n_modes=16, E0=1.5, T_valid=0.05,
                                            output_dir='runs/3f2a9c0b1d4e'))
        stored = registry.get_run(run_id)
        assert stored.id == run_id
        assert stored.kappa == 0.01
        assert stored.n_modes == 16
        assert stored.output_dir == 'runs/3f2a9c0b1d4e'
        assert stored.iterations is None
        assert isinstance(stored.created_at, datetime)

    def test_missing_run(self, registry):
        assert registry.get_run(99) is None

    def test_list_filters(self, registry):
        registry.record_run(record('aaa', 'run'))
        registry.record_run(record('bbb', 'sweep', status='failed', exit_code=1))
        registry.record_run(record('bbb', 'sweep'))
        assert [r.config_hash for r in registry.list_runs()] == ['aaa', 'bbb', 'bbb']
        assert len(registry.list_runs(config_hash='bbb')) == 2
        assert [r.status for r in registry.list_runs(command='sweep')] == ['failed', 'ok']
        assert registry.list_runs(config_hash='aaa', command='sweep') == []

    def test_record_to_dict(self, registry):
        stored = registry.get_run(registry.record_run(record()))
        data = stored.to_dict()
        assert data['status'] == 'ok'
        assert isinstance(data['created_at'], str)

    def test_failed_insert_rolls_back(self, registry):
        with pytest.raises(Exception):
            registry.record_run(RunRecord(config_hash=None, command='run', status='ok'))
        assert registry.list_runs() == []


class TestConfiguration:
    def test_from_config_inside_output_dir(self, tmp_path):
        settings = tmp_path / 'config.yaml'
        settings.write_text(yaml.safe_dump({'registry': {'path': 'index.db'}}))
        out_dir = tmp_path / 'runs'
        with RunRegistry.from_config(str(settings), out_dir=str(out_dir)) as registry:
            registry.record_run(record())
            assert registry.db_path == str(out_dir / 'index.db')
        assert (out_dir / 'index.db').exists()

    def test_persists_between_connections(self, tmp_path):
        path = str(tmp_path / 'runs.db')
        with RunRegistry(path) as registry:
            registry.record_run(record(status='bound_violation', exit_code=3))
        with RunRegistry(path) as registry:
            runs = registry.list_runs()
        assert [(r.status, r.exit_code) for r in runs] == [('bound_violation', 3)]
