from pathlib import Path

import pytest

from deltanas.dataset.doa import DoADataset
from deltanas.dataset.files import format_dataset, load_dataset, parse_dataset, save_dataset
from deltanas.exceptions import ParserError

_HEADER: str = "#doa kind=block n=3 r=3 k=1 samples_per_encoding=2 seed=0"


def test_round_trip(tmp_path: Path, dataset: DoADataset) -> None:
    path: Path = tmp_path / "out" / "dataset.txt"
    save_dataset(dataset, path, config_hash="ab12")
    loaded: DoADataset = load_dataset(path)
    assert loaded == dataset
    assert [sample.delta_acc for sample in loaded.samples] == [sample.delta_acc for sample in dataset.samples]
    assert path.read_text(encoding="utf-8").startswith("#config hash=ab12\n#doa ")
    assert format_dataset(loaded, config_hash="ab12") == path.read_text(encoding="utf-8")


def test_header_echoes_generation_parameters(dataset: DoADataset) -> None:
    header: str = format_dataset(dataset).splitlines()[0]
    assert header == "#doa kind=block n=8 r=3 k=1 samples_per_encoding=4 seed=3"


def test_parse() -> None:
    parsed: DoADataset = parse_dataset([_HEADER, "0-1-2 1:1>0 0.125", "", "2-2-2 0:2>1 -0.5"])
    assert parsed.k == 1
    assert parsed.samples_per_encoding == 2
    assert [sample.anchor_key for sample in parsed.samples] == ["0-1-2", "2-2-2"]
    assert parsed.samples[0].feature.tolist() == [0.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0]


def test_parse_empty() -> None:
    assert len(parse_dataset([_HEADER])) == 0


@pytest.mark.parametrize("lines, match", (
        ([], "Missing #doa"),
        (["0-1-2 1:1>0 0.1"], "Line 1"),
        (["#doa kind=block n=3 r=3 k=1"], "Line 1"),
        ([_HEADER, "0-1-2 1:1>0"], "Line 2: expected"),
        ([_HEADER, "0-1-2 1:0>2 0.1"], "Line 2"),
        ([_HEADER, "0-1-2 1:1>0,2:2>0 0.1"], "Line 2"),
        ([_HEADER, "0-1-2 7:0>1 0.1"], "Line 2"),
        ([_HEADER, "0-1-2 a0:0>1 0.1"], "Line 2"),
        ([_HEADER, "0-1-2 1:1>5 0.1"], "Line 2"),
        ([_HEADER, "0-1-9 1:1>0 0.1"], "Line 2"),
        ([_HEADER, "0-1-2 1:1>0 x"], "Line 2"),
        ([_HEADER, "0-1-2 1:1>0 inf"], "isn't finite")))
def test_parse_errors(lines: list[str], match: str) -> None:
    with pytest.raises(ParserError, match=match):
        parse_dataset(lines)
