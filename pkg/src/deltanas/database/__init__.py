from .client import Client
from .queries import ArtifactEntry, artifact_exists, file_digest, find_artifact, register_artifact

__all__ = ("Client", "ArtifactEntry", "artifact_exists", "file_digest", "find_artifact", "register_artifact")
