from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from sqlite3 import Connection, Cursor, ProgrammingError, connect as sqlite3_connect
from types import TracebackType
from typing import Iterator

from ..constants import DATABASE_TABLE_QUERIES


@dataclass(kw_only=True)
class Client:
    """
    The artifact registry of one output directory: an sqlite file kept next to the artifacts it lists.
    The registry (and its directory) is created on first use.
    """
    file_path: Path
    _connection: Connection | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        self.file_path.parent.mkdir(parents=True, exist_ok=True)
        self._connection = sqlite3_connect(f"file:{self.file_path}", check_same_thread=False, uri=True)

        cursor: Cursor
        with self.transaction() as cursor:
            for table_query in DATABASE_TABLE_QUERIES:
                cursor.execute(table_query)

    @property
    def connection(self) -> Connection:
        """
        :raises ProgrammingError: once the registry is closed
        """
        if self._connection is None:
            raise ProgrammingError(f"The artifact registry {self.file_path} is closed.")
        return self._connection

    def cursor(self) -> Cursor:
        return self.connection.cursor()

    @contextmanager
    def transaction(self) -> Iterator[Cursor]:
        """
        A cursor whose statements are committed together when the block exits, and rolled back if it raises.
        :return: a generator which yields the cursor
        """
        cursor: Cursor = self.cursor()
        try:
            yield cursor
        except BaseException:
            self.connection.rollback()
            raise
        else:
            self.connection.commit()
        finally:
            cursor.close()

    def close(self) -> None:
        """Closes the connection; closing twice is a no-op."""
        if self._connection is not None:
            self._connection.close()
            self._connection = None

    # Context manager support
    def __enter__(self) -> Client:
        return self

    def __exit__(self, exc_type: type[BaseException] | None, exc_val: BaseException | None,
                 exc_tb: TracebackType | None) -> None:
        self.close()
