import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .base import Oracle
from ..exceptions import DuplicateKeyError, InvalidKeyError, ParserError, UnknownArchitectureError
from ..space.architecture import ArchKey, Architecture, parse_key
from ..space.spec import SearchSpaceSpec, SpecRecord

_COMMENT_PREFIX: str = "#"


@dataclass(frozen=True)
class TabularBenchmark(Oracle):
    """Accuracies looked up from a table of architectures."""
    spec: SearchSpaceSpec
    entries: Mapping[ArchKey, float]
    metadata: tuple[str, ...] = field(default=())

    def score(self, architecture: Architecture) -> float:
        """
        The tabulated accuracy of an architecture.
        :param architecture: an architecture of the benchmark's space
        :return: the accuracy
        :raises SpecMismatchError: if the architecture belongs to another space
        :raises UnknownArchitectureError: if the architecture isn't in the table
        """
        self._check_spec(architecture)
        try:
            return self.entries[architecture.key]
        except KeyError:
            raise UnknownArchitectureError(f"Architecture {architecture.key} isn't in the benchmark.")

    def candidates(self, limit: int) -> Iterable[Architecture]:
        # Only tabulated architectures can be scored
        return (parse_key(self.spec, key) for key in sorted(self.entries))

    def __len__(self) -> int:
        return len(self.entries)


def _parse_accuracy(text: str, line_number: int) -> float:
    try:
        accuracy: float = float(text)
    except ValueError:
        raise ParserError(f"Line {line_number}: couldn't parse the accuracy {text!r}.")
    if not (math.isfinite(accuracy) and 0.0 <= accuracy <= 1.0):
        raise ParserError(f"Line {line_number}: accuracy {text!r} is outside [0, 1].")
    return accuracy


def parse_tabular(lines: Iterable[str]) -> TabularBenchmark:
    """
    Parses a tabular benchmark: a "#spec" header, then "<ArchKey> <accuracy>" lines. Other "#" lines are kept
      as metadata.
    :param lines: the lines of the benchmark file
    :return: a validated TabularBenchmark
    :raises ParserError: on a missing header or a malformed line (with its line number)
    :raises InvalidKeyError: if a key doesn't describe an architecture of the declared space
    :raises DuplicateKeyError: if an architecture is listed twice
    """
    spec: SearchSpaceSpec | None = None
    entries: dict[ArchKey, float] = {}
    metadata: list[str] = []

    for line_number, raw_line in enumerate(lines, start=1):
        line: str = raw_line.strip()
        if not line:
            continue

        if spec is None:
            if not line.startswith("#spec"):
                if line.startswith(_COMMENT_PREFIX):
                    metadata.append(line.removeprefix(_COMMENT_PREFIX).strip())
                    continue
                raise ParserError(f"Line {line_number}: expected a #spec header before any entry.")
            try:
                spec = SpecRecord.deserialize(line).to_spec()
            except ParserError as exception:
                raise ParserError(f"Line {line_number}: {exception}")
            continue

        if line.startswith(_COMMENT_PREFIX):
            metadata.append(line.removeprefix(_COMMENT_PREFIX).strip())
            continue

        tokens: list[str] = line.split()
        if len(tokens) != 2:
            raise ParserError(f"Line {line_number}: expected '<ArchKey> <accuracy>', got {line!r}.")
        key, accuracy_text = tokens

        try:
            architecture: Architecture = parse_key(spec, key)
        except InvalidKeyError as exception:
            raise InvalidKeyError(f"Line {line_number}: {exception}")
        if architecture.key in entries:
            raise DuplicateKeyError(f"Line {line_number}: architecture {architecture.key} is listed more than once.")
        entries[architecture.key] = _parse_accuracy(accuracy_text, line_number)

    if spec is None:
        raise ParserError("Missing #spec header.")
    return TabularBenchmark(spec, entries, tuple(metadata))


def load_tabular(path: Path) -> TabularBenchmark:
    """
    Loads a tabular benchmark file.
    :param path: the path of the file
    :return: a validated TabularBenchmark
    :raises OSError: if the file can't be read
    :raises ParserError: from parse_tabular
    """
    with open(path, mode="r", encoding="utf-8") as file:
        return parse_tabular(file)


def save_tabular(benchmark: TabularBenchmark, path: Path) -> None:
    """
    Saves a tabular benchmark; load_tabular reads back the identical table.
    :param benchmark: the benchmark to save
    :param path: the destination path
    """
    lines: list[str] = [benchmark.spec.to_record().serialize()]
    lines.extend(f"{_COMMENT_PREFIX} {note}" for note in benchmark.metadata)
    lines.extend(f"{key} {benchmark.entries[key]!r}" for key in sorted(benchmark.entries))

    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as file:
        file.write("\n".join(lines) + "\n")


def dump_landscape(oracle: Oracle, limit: int, metadata: tuple[str, ...] = ()) -> TabularBenchmark:
    """
    Tabulates every architecture of an oracle's space.
    :param oracle: the oracle to tabulate (scores must lie in [0, 1])
    :param limit: the largest space that may be enumerated
    :param metadata: free-form notes stored with the table
    :return: a TabularBenchmark with one entry per architecture
    :raises SpaceTooLargeError: if the space is larger than limit
    """
    entries: dict[ArchKey, float] = {architecture.key: oracle.score(architecture)
                                     for architecture in oracle.candidates(limit)}
    return TabularBenchmark(oracle.spec, entries, metadata)
