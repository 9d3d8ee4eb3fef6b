from pathlib import Path
from sqlite3 import Connection, connect as sqlite3_connect
from typing import Any, Generator

from pytest import MonkeyPatch, fixture

from deltanas.database.client import Client as DatabaseClient
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.space.spec import SearchSpaceSpec, SpaceKind

_DUMMY_FILE_PATH: Path = Path("dummy_artifacts.db")


# noinspection PyUnusedLocal
def mock_sqlite3_connect(database: str, *args: Any, **kwargs: Any) -> Connection:
    """
    Mock sqlite3.connect to replace the database argument.
    :param database: the original database argument
    :param args: remaining positional arguments
    :param kwargs: remaining keyword arguments
    :return: a sqlite3 Connection instance
    """
    assert database == f"file:{_DUMMY_FILE_PATH}"
    return sqlite3_connect(":memory:", *args, **kwargs)


@fixture(scope="module")
def monkeypatch_module_scope() -> Generator[MonkeyPatch, None, None]:
    monkeypatch: MonkeyPatch = MonkeyPatch()
    yield monkeypatch
    monkeypatch.undo()


@fixture(scope="module")
def database_client(monkeypatch_module_scope: MonkeyPatch) -> Generator[DatabaseClient, None, None]:
    """
    A fixture to provide an already set up in-memory artifact registry.
    :return: a generator which yields a DatabaseClient instance
    """
    monkeypatch_module_scope.setattr("deltanas.database.client.sqlite3_connect", mock_sqlite3_connect)

    database: DatabaseClient
    with DatabaseClient(file_path=_DUMMY_FILE_PATH) as database:
        yield database


@fixture(scope="session")
def block_spec() -> SearchSpaceSpec:
    return SearchSpaceSpec(SpaceKind.BLOCK, n=4, r=3)


@fixture(scope="session")
def cell_spec() -> SearchSpaceSpec:
    return SearchSpaceSpec(SpaceKind.CELL, n=4, r=2)


@fixture(scope="session")
def desk_spec() -> SearchSpaceSpec:
    """The 6561-architecture block space (n=8, r=3) most experiments run on."""
    return SearchSpaceSpec(SpaceKind.BLOCK, n=8, r=3)


@fixture(scope="session")
def landscape(desk_spec: SearchSpaceSpec) -> SyntheticLandscape:
    return SyntheticLandscape(desk_spec, seed=7)


@fixture(scope="session")
def additive_landscape(desk_spec: SearchSpaceSpec) -> SyntheticLandscape:
    """A landscape without pairwise terms: every edit's delta is independent of its context."""
    return SyntheticLandscape(desk_spec, seed=7, pair_weight=0.0)
