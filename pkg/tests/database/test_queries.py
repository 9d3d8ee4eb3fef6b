from pathlib import Path

import pytest

from deltanas.database.client import Client as DatabaseClient
from deltanas.database.queries import ArtifactEntry, artifact_exists, file_digest, find_artifact, register_artifact

# Global variables for the artifact registry
_DUMMY_COMMAND: str = "train"
_DUMMY_HASH: str = "0" * 64


@pytest.fixture(scope="module")
def artifact_path(tmp_path_factory: pytest.TempPathFactory) -> Path:
    path: Path = tmp_path_factory.mktemp("artifacts") / "predictor.txt"
    path.write_text("#model\n", encoding="utf-8")
    return path


@pytest.mark.order(-1)
def test_artifact_exists(database_client: DatabaseClient) -> None:
    """
    Test artifact_exists by checking for an already registered artifact.
    :param database_client: a Database instance
    """
    assert artifact_exists(database_client, _DUMMY_COMMAND, _DUMMY_HASH)
    assert not artifact_exists(database_client, "search", _DUMMY_HASH)


def test_register_artifact(database_client: DatabaseClient, artifact_path: Path) -> None:
    """
    Test register_artifact by registering a dummy artifact, replacing it and querying it.
    :param database_client: a Database instance
    :param artifact_path: the path of the dummy artifact
    """
    assert find_artifact(database_client, _DUMMY_COMMAND, _DUMMY_HASH) is None

    first: ArtifactEntry = register_artifact(database_client, _DUMMY_COMMAND, _DUMMY_HASH, artifact_path)
    assert find_artifact(database_client, _DUMMY_COMMAND, _DUMMY_HASH) == first

    # Registering again replaces the entry instead of failing
    artifact_path.write_text("#model changed\n", encoding="utf-8")
    second: ArtifactEntry = register_artifact(database_client, _DUMMY_COMMAND, _DUMMY_HASH, artifact_path)
    assert second.digest != first.digest
    assert find_artifact(database_client, _DUMMY_COMMAND, _DUMMY_HASH) == second


def test_file_digest(artifact_path: Path) -> None:
    assert file_digest(artifact_path) == file_digest(artifact_path)
    assert len(file_digest(artifact_path)) == 64
