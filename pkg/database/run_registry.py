"""
Run Registry

SQLite index of CLI invocations and the runs they produced, so sweeps and
repeated runs can be looked up by config hash.
"""

import sqlite3
import os
import logging
from typing import Optional, List
from contextlib import contextmanager

import yaml

from models.run_record import RunRecord

logger = logging.getLogger(__name__)

RUN_COLUMNS = ('config_hash', 'command', 'status', 'exit_code', 'kappa', 'gamma', 'n_modes',
               'dt', 'T', 'iterations', 'max_ratio', 'E0', 'E_max', 'T_valid', 'output_dir')


class RunRegistry:
    """
    Manages the registry database.

    Attributes:
        db_path: Path to the SQLite file
        conn: Active connection

    Example:
        >>> registry = RunRegistry('runs/runs.db')
        >>> run_id = registry.record_run(RunRecord(config_hash='3f2a9c0b1d4e', command='run', status='ok'))
        >>> registry.get_run(run_id).status
        'ok'
    """

    def __init__(self, db_path: str = 'runs.db'):
        """
        Initialize the registry.

        Args:
            db_path: Path to the SQLite file (':memory:' for a transient registry)
        """
        self.db_path = db_path
        self.conn = None

        self._connect()
        self._initialize_schema()

    @classmethod
    def from_config(cls, config_path: str = 'config.yaml', out_dir: Optional[str] = None) -> 'RunRegistry':
        """
        Create RunRegistry from configuration file.

        Args:
            config_path: Path to YAML configuration file
            out_dir: Output directory; a relative registry path is placed inside it
        """
        with open(config_path, 'r') as f:
            config = yaml.safe_load(f) or {}

        path = config.get('registry', {}).get('path', 'runs.db')
        if out_dir and not os.path.isabs(path):
            path = os.path.join(out_dir, path)
        return cls(db_path=path)

    def _connect(self):
        """Establish database connection."""
        directory = os.path.dirname(self.db_path)
        if directory and self.db_path != ':memory:':
            os.makedirs(directory, exist_ok=True)
        self.conn = sqlite3.connect(self.db_path)
        self.conn.row_factory = sqlite3.Row
        # Enable foreign key constraints
        self.conn.execute("PRAGMA foreign_keys = ON")
        logger.debug(f"Connected to run registry: {self.db_path}")

    def _initialize_schema(self):
        """Initialize database schema if tables don't exist."""
        schema_path = os.path.join(os.path.dirname(__file__), 'schema.sql')
        with open(schema_path, 'r') as f:
            schema_sql = f.read()
        self.conn.executescript(schema_sql)
        self.conn.commit()

    @contextmanager
    def get_cursor(self):
        """
        Context manager for database cursors.

        Yields:
            Database cursor

        Example:
            >>> with registry.get_cursor() as cursor:
            ...     cursor.execute("SELECT * FROM runs")
            ...     rows = cursor.fetchall()
        """
        cursor = self.conn.cursor()
        try:
            yield cursor
            self.conn.commit()
        except Exception as e:
            self.conn.rollback()
            logger.error(f"Database error: {e}")
            raise
        finally:
            cursor.close()

    def close(self):
        """Close database connection."""
        if self.conn:
            self.conn.close()
            self.conn = None
            logger.debug("Run registry closed")

    def __enter__(self) -> 'RunRegistry':
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # ===========================
    # Invocation Operations
    # ===========================

    def start_invocation(self, command: str, config_path: Optional[str] = None) -> int:
        """Record a CLI invocation and return its id."""
        with self.get_cursor() as cursor:
            cursor.execute("INSERT INTO invocations (command, config_path) VALUES (?, ?)",
                           (command, config_path))
            return cursor.lastrowid

    def finish_invocation(self, invocation_id: int, exit_code: int) -> None:
        with self.get_cursor() as cursor:
            cursor.execute("UPDATE invocations SET exit_code = ? WHERE id = ?", (exit_code, invocation_id))

    # ===========================
    # Run Operations
    # ===========================

    def record_run(self, record: RunRecord, invocation_id: Optional[int] = None) -> int:
        """
        Insert one run.

        Args:
            record: RunRecord to store
            invocation_id: Optional invocation the run belongs to

        Returns:
            Id of the new row
        """
        values = [getattr(record, column) for column in RUN_COLUMNS]
        placeholders = ', '.join('?' for _ in range(len(RUN_COLUMNS) + 1))
        with self.get_cursor() as cursor:
            cursor.execute(
                f"INSERT INTO runs (invocation_id, {', '.join(RUN_COLUMNS)}) VALUES ({placeholders})",
                [invocation_id] + values,
            )
            record.id = cursor.lastrowid
        logger.debug(f"Recorded {record!r}")
        return record.id

    def get_run(self, run_id: int) -> Optional[RunRecord]:
        with self.get_cursor() as cursor:
            cursor.execute(f"SELECT id, {', '.join(RUN_COLUMNS)}, created_at FROM runs WHERE id = ?", (run_id,))
            row = cursor.fetchone()
        return RunRecord.from_row(row) if row else None

    def list_runs(self, config_hash: Optional[str] = None, command: Optional[str] = None) -> List[RunRecord]:
        """
        List runs, optionally filtered.

        Args:
            config_hash: Only runs of this configuration
            command: Only runs produced by this command

        Returns:
            RunRecords in insertion order
        """
        query = f"SELECT id, {', '.join(RUN_COLUMNS)}, created_at FROM runs"
        clauses, params = [], []
        if config_hash is not None:
            clauses.append("config_hash = ?")
            params.append(config_hash)
        if command is not None:
            clauses.append("command = ?")
            params.append(command)
        if clauses:
            query += " WHERE " + " AND ".join(clauses)
        query += " ORDER BY id"
        with self.get_cursor() as cursor:
            cursor.execute(query, params)
            rows = cursor.fetchall()
        return [RunRecord.from_row(row) for row in rows]
