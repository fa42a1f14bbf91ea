"""
Storage package: run-directory artifact stores.
"""

from .artifact_store import (
    ArtifactStore,
    LocalArtifactStore,
    NullArtifactStore,
    create_artifact_store,
    artifact_store_from_config,
)

__all__ = [
    'ArtifactStore',
    'LocalArtifactStore',
    'NullArtifactStore',
    'create_artifact_store',
    'artifact_store_from_config',
]
