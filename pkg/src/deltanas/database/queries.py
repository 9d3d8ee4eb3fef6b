from __future__ import annotations

from contextlib import closing
from dataclasses import dataclass
from hashlib import sha256
from pathlib import Path

from .client import Client as DatabaseClient, Cursor


@dataclass(frozen=True)
class ArtifactEntry:
    command: str
    config_hash: str
    path: Path
    digest: str


def file_digest(file_path: Path) -> str:
    """
    The sha256 digest of a file's contents.
    :param file_path: the file to hash
    :return: the hex digest
    """
    with open(file_path, mode="rb") as file:
        return sha256(file.read()).hexdigest()


def artifact_exists(database: DatabaseClient, command: str, config_hash: str) -> bool:
    """
    Checks if a command already produced an artifact for a configuration.
    :param database: a DatabaseClient instance
    :param command: the producing command
    :param config_hash: the configuration hash
    :return: True if an artifact is registered, otherwise False
    """
    cursor: Cursor
    with closing(database.cursor()) as cursor:
        query: str = "SELECT EXISTS(SELECT 1 FROM artifacts WHERE command = ? AND config_hash = ?)"
        return cursor.execute(query, (command, config_hash)).fetchone()[0] >= 1


def register_artifact(database: DatabaseClient, command: str, config_hash: str, file_path: Path) -> ArtifactEntry:
    """
    Records (or replaces) the artifact a command produced for a configuration, with the digest of the file.
    :param database: a DatabaseClient instance
    :param command: the producing command
    :param config_hash: the configuration hash
    :param file_path: the artifact's path
    :return: the registered entry
    """
    entry: ArtifactEntry = ArtifactEntry(command, config_hash, file_path, file_digest(file_path))
    cursor: Cursor
    with database.transaction() as cursor:
        query: str = "INSERT OR REPLACE INTO artifacts (command, config_hash, path, digest) VALUES (?, ?, ?, ?)"
        cursor.execute(query, (entry.command, entry.config_hash, str(entry.path), entry.digest))
    return entry


def find_artifact(database: DatabaseClient, command: str, config_hash: str) -> ArtifactEntry | None:
    """
    Looks up the artifact a command produced for a configuration.
    :param database: a DatabaseClient instance
    :param command: the producing command
    :param config_hash: the configuration hash
    :return: the entry, or None if there is none
    """
    cursor: Cursor
    with closing(database.cursor()) as cursor:
        query: str = "SELECT command, config_hash, path, digest FROM artifacts WHERE command = ? AND config_hash = ?"
        row: tuple[str, str, str, str] | None = cursor.execute(query, (command, config_hash)).fetchone()
    if row is None:
        return None
    return ArtifactEntry(row[0], row[1], Path(row[2]), row[3])
