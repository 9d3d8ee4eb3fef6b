import math
from pathlib import Path

import pytest

from deltanas.exceptions import ParserError
from deltanas.search.trace import TRACE_COLUMNS, SearchTrace, TraceStep, format_value, parse_trace_csv, \
    read_trace_csv, write_trace_csv

_HEADER: str = ",".join(TRACE_COLUMNS)


@pytest.fixture(scope="module")
def trace() -> SearchTrace:
    return SearchTrace((TraceStep(0, 0, 0, -math.inf, 3.5), TraceStep(1, 0, 64, -math.inf, 2.25),
                        TraceStep(2, 5, 64, 0.7123456789012345, 1.0)))


def test_write_and_read(tmp_path: Path, trace: SearchTrace) -> None:
    path: Path = tmp_path / "runs" / "trace.csv"
    write_trace_csv(trace, path, config_hash="abc", config_echo='{"seed": 0}')
    lines: list[str] = path.read_text(encoding="utf-8").splitlines()
    assert lines[:3] == ["#config hash=abc", '# {"seed": 0}', _HEADER]
    assert lines[3] == "0,0,0,-inf,3.5"
    assert read_trace_csv(path) == trace


def test_format_value() -> None:
    assert format_value(3) == "3"
    assert format_value(0.1) == "0.1"
    assert format_value(math.inf) == "inf"
    assert format_value("random") == "random"


def test_nan_distances_are_kept() -> None:
    parsed: SearchTrace = parse_trace_csv([_HEADER, "1,1,0,0.5,nan"])
    assert math.isnan(parsed.final.mean_edit_dist)


@pytest.mark.parametrize("lines", (
        [],
        ["iteration,oracle_queries"],
        [_HEADER, "1,1,0,0.5"],
        [_HEADER, "1,x,0,0.5,1.0"],
        [_HEADER, "1,1,0,nan,1.0"],
        [_HEADER, "1,5,0,0.5,1.0", "2,4,0,0.5,1.0"],
        [_HEADER, "1,1,0,0.5,1.0", "2,2,0,0.4,1.0"]))
def test_parse_errors(lines: list[str]) -> None:
    with pytest.raises(ParserError):
        parse_trace_csv(lines)


def test_monotonicity_is_enforced() -> None:
    with pytest.raises(ValueError):
        SearchTrace((TraceStep(1, 2, 0, 0.5, 0.0), TraceStep(2, 1, 0, 0.5, 0.0)))
