from __future__ import annotations

import csv
import math
from dataclasses import astuple, dataclass, fields
from pathlib import Path
from typing import Iterable

from ..exceptions import ParserError
from ..records.provenance import ConfigStamp
from ..space.architecture import ArchKey, Architecture

TRACE_COLUMNS: tuple[str, ...] = ("iteration", "oracle_queries", "predictor_queries", "best_score", "mean_edit_dist")


@dataclass(frozen=True)
class TraceStep:
    iteration: int
    oracle_queries: int
    predictor_queries: int
    # -inf until the first true evaluation
    best_score: float
    # nan when no optimum is known
    mean_edit_dist: float


@dataclass(frozen=True)
class SearchTrace:
    steps: tuple[TraceStep, ...] = ()

    def __post_init__(self) -> None:
        for previous, current in zip(self.steps, self.steps[1:]):
            if current.oracle_queries < previous.oracle_queries or current.best_score < previous.best_score:
                raise ValueError(f"Step {current.iteration} decreases the oracle queries or the best score.")

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def final(self) -> TraceStep:
        return self.steps[-1]


@dataclass(frozen=True)
class Mutation:
    parent: ArchKey
    child: ArchKey


@dataclass(frozen=True)
class SearchResult:
    """
    The outcome of a search: the true-score argmax, its score, the trace, every true evaluation in order and,
      for evolutionary searches, the parent of every child.
    """
    best: Architecture
    best_score: float
    trace: SearchTrace
    evaluations: tuple[tuple[ArchKey, float], ...] = ()
    mutations: tuple[Mutation, ...] = ()


def format_value(value: str | int | float) -> str:
    # repr round-trips floats exactly, including inf and nan
    return repr(value) if isinstance(value, float) else str(value)


def write_trace_csv(trace: SearchTrace, path: Path, config_hash: str | None = None,
                    config_echo: str | None = None) -> None:
    """
    Writes a trace as CSV, preceded by the "#config" stamp and a "#" comment echoing the configuration.
    :param trace: the trace to write
    :param path: the destination path
    :param config_hash: the hash of the configuration that produced the trace
    :param config_echo: the configuration as a single line of text
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8", newline="") as file:
        if config_hash is not None:
            file.write(ConfigStamp(config_hash).serialize() + "\n")
        if config_echo is not None:
            file.write(f"# {config_echo}\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        writer.writerows([format_value(value) for value in astuple(step)] for step in trace.steps)


def parse_trace_csv(lines: Iterable[str]) -> SearchTrace:
    """
    Parses a trace CSV, skipping "#" lines.
    :raises ParserError: on a wrong header or malformed row (with its line number)
    """
    rows = csv.reader(line for line in lines if not line.startswith("#"))
    header: list[str] | None = next(rows, None)
    if header is None or tuple(header) != TRACE_COLUMNS:
        raise ParserError(f"Expected the trace header {','.join(TRACE_COLUMNS)!r}, got {header!r}.")

    types: list[type] = [int if step_field.type in (int, "int") else float for step_field in fields(TraceStep)]
    steps: list[TraceStep] = []
    for row_number, row in enumerate(rows, start=1):
        if len(row) != len(TRACE_COLUMNS):
            raise ParserError(f"Row {row_number}: expected {len(TRACE_COLUMNS)} values, got {len(row)}.")
        try:
            values: list[int | float] = [cast(value) for cast, value in zip(types, row)]
        except ValueError:
            raise ParserError(f"Row {row_number}: malformed values {row!r}.")
        if math.isnan(values[3]):
            raise ParserError(f"Row {row_number}: the best score can't be nan.")
        steps.append(TraceStep(*values))  # type: ignore[arg-type]
    try:
        return SearchTrace(tuple(steps))
    except ValueError as exception:
        raise ParserError(str(exception))


def read_trace_csv(path: Path) -> SearchTrace:
    with open(path, mode="r", encoding="utf-8", newline="") as file:
        return parse_trace_csv(file)
