"""
Artifact Store

Where run outputs go: a local run directory named by the config hash, or a
dry-run store that only records the paths it would have written.
"""

import os
import logging
from abc import ABC, abstractmethod
from typing import List, Optional

import yaml

logger = logging.getLogger(__name__)


class ArtifactStore(ABC):
    """
    Abstract base class for artifact stores.

    Artifacts are addressed by names relative to the run directory.
    """

    @abstractmethod
    def write_text(self, name: str, text: str) -> str:
        """
        Write a text artifact.

        Args:
            name: File name relative to the run directory
            text: File content

        Returns:
            Path of the artifact
        """
        pass

    @abstractmethod
    def exists(self, name: str) -> bool:
        """Check if an artifact exists."""
        pass

    @abstractmethod
    def list_files(self) -> List[str]:
        """Names of all artifacts written so far."""
        pass

    @abstractmethod
    def path(self, name: str) -> str:
        """Full path an artifact has (or would have)."""
        pass

    @property
    def persistent(self) -> bool:
        return True


class LocalArtifactStore(ArtifactStore):
    """
    Run directory on the local filesystem.

    Attributes:
        base_path: Output root (the --out directory)
        run_name: Subdirectory of this run, usually the config hash

    Example:
        >>> store = LocalArtifactStore('runs', cfg.config_hash())
        >>> store.write_text('manifest.json', '{}')
        'runs/3f2a9c0b1d4e/manifest.json'
    """

    def __init__(self, base_path: str, run_name: Optional[str] = None):
        self.base_path = base_path
        self.run_name = run_name
        self.run_dir = os.path.join(base_path, run_name) if run_name else base_path

    def path(self, name: str) -> str:
        return os.path.join(self.run_dir, name)

    def write_text(self, name: str, text: str) -> str:
        full_path = self.path(name)
        os.makedirs(os.path.dirname(full_path), exist_ok=True)
        with open(full_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.debug(f"Wrote artifact: {full_path}")
        return full_path

    def exists(self, name: str) -> bool:
        return os.path.exists(self.path(name))

    def list_files(self) -> List[str]:
        if not os.path.exists(self.run_dir):
            return []
        files = []
        for root, dirs, filenames in os.walk(self.run_dir):
            for filename in filenames:
                files.append(os.path.relpath(os.path.join(root, filename), self.run_dir))
        return sorted(files)

    def child(self, run_name: str) -> 'LocalArtifactStore':
        """Store for a nested run directory (sweep entries)."""
        return LocalArtifactStore(self.run_dir, run_name)


class NullArtifactStore(ArtifactStore):
    """
    Dry-run store: remembers the planned artifact paths and writes nothing.

    Attributes:
        planned: Paths that would have been written
    """

    def __init__(self, base_path: str = 'runs', run_name: Optional[str] = None):
        self.base_path = base_path
        self.run_name = run_name
        self.run_dir = os.path.join(base_path, run_name) if run_name else base_path
        self.planned: List[str] = []

    def path(self, name: str) -> str:
        return os.path.join(self.run_dir, name)

    def write_text(self, name: str, text: str) -> str:
        full_path = self.path(name)
        self.planned.append(full_path)
        logger.info(f"[dry-run] would write {full_path} ({len(text)} bytes)")
        return full_path

    def exists(self, name: str) -> bool:
        return False

    def list_files(self) -> List[str]:
        return []

    @property
    def persistent(self) -> bool:
        return False

    def child(self, run_name: str) -> 'NullArtifactStore':
        return NullArtifactStore(self.run_dir, run_name)


def create_artifact_store(out_dir: str, run_name: Optional[str] = None,
                          dry_run: bool = False) -> ArtifactStore:
    """
    Factory for the artifact store of one CLI invocation.

    Args:
        out_dir: Output root
        run_name: Run directory name (the config hash)
        dry_run: Return a store that writes nothing
    """
    if dry_run:
        return NullArtifactStore(out_dir, run_name)
    return LocalArtifactStore(out_dir, run_name)


def artifact_store_from_config(config_path: str = 'config.yaml', run_name: Optional[str] = None,
                               dry_run: bool = False) -> ArtifactStore:
    """Create the artifact store from the `reporting` section of a configuration file."""
    with open(config_path, 'r') as f:
        config = yaml.safe_load(f) or {}

    out_dir = config.get('reporting', {}).get('output_dir', 'runs')
    return create_artifact_store(out_dir, run_name, dry_run)
