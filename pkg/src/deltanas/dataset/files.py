from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .doa import DoADataset, DoASample, check_sample, make_sample
from ..exceptions import Error, ParserError
from ..records.provenance import ConfigStamp
from ..records.serializable import MappingGenerator, Serializable
from ..encoding.difference import DiffEncoding, format_diff, parse_diff
from ..space.architecture import Architecture, parse_key
from ..space.spec import SearchSpaceSpec, SpaceKind


@dataclass(frozen=True)
class DatasetRecord(Serializable):
    kind: SpaceKind
    n: int
    r: int
    k: int
    samples_per_encoding: int
    seed: int

    @staticmethod
    def _tag() -> str:
        return "doa"

    @staticmethod
    def _data_mappings() -> MappingGenerator:
        yield "kind", "kind"
        yield "n", "n"
        yield "r", "r"
        yield "k", "k"
        yield "samples_per_encoding", "samples_per_encoding"
        yield "seed", "seed"

    @classmethod
    def from_dataset(cls, dataset: DoADataset) -> DatasetRecord:
        return cls(dataset.spec.kind, dataset.spec.n, dataset.spec.r, dataset.k, dataset.samples_per_encoding,
                   dataset.generation_seed)


def format_dataset(dataset: DoADataset, config_hash: str | None = None) -> str:
    """
    Formats a dataset as text: an optional "#config" stamp, the "#doa" header,
      then "<anchor ArchKey> <DiffEncoding> <delta_acc>" per sample.
    :param dataset: the dataset to format
    :param config_hash: the hash of the configuration that produced the dataset
    :return: the file contents
    """
    lines: list[str] = [ConfigStamp(config_hash).serialize()] if config_hash is not None else []
    lines.append(DatasetRecord.from_dataset(dataset).serialize())
    lines.extend(f"{sample.anchor_key} {format_diff(sample.diff)} {sample.delta_acc!r}" for sample in dataset.samples)
    return "\n".join(lines) + "\n"


def save_dataset(dataset: DoADataset, path: Path, config_hash: str | None = None) -> None:
    """
    Saves a dataset file.
    :param dataset: the dataset to save
    :param path: the destination path
    :param config_hash: the hash of the configuration that produced the dataset
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as file:
        file.write(format_dataset(dataset, config_hash))


def parse_dataset(lines: Iterable[str]) -> DoADataset:
    """
    Parses a dataset file, rebuilding the features of every sample.
    :param lines: the lines of the file
    :return: the DoADataset
    :raises ParserError: on a malformed header or sample line (with its line number)
    """
    header: DatasetRecord | None = None
    spec: SearchSpaceSpec | None = None
    dataset: DoADataset | None = None
    samples: list[DoASample] = []

    for line_number, raw_line in enumerate(lines, start=1):
        line: str = raw_line.strip()
        if not line or line.startswith("#config"):
            continue

        if header is None:
            try:
                header = DatasetRecord.deserialize(line)
                spec = SearchSpaceSpec(header.kind, header.n, header.r)
            except Error as exception:
                raise ParserError(f"Line {line_number}: {exception}")
            dataset = DoADataset(spec, header.k, header.samples_per_encoding, header.seed)
            continue
        assert spec is not None and dataset is not None

        tokens: list[str] = line.split()
        if len(tokens) != 3:
            raise ParserError(f"Line {line_number}: expected '<anchor> <diff> <delta_acc>', got {line!r}.")
        anchor_text, diff_text, delta_text = tokens

        try:
            anchor: Architecture = parse_key(spec, anchor_text)
            difference: DiffEncoding = parse_diff(diff_text)
            delta_acc: float = float(delta_text)
            check_sample(dataset, anchor, difference)
            sample: DoASample = make_sample(anchor, difference, delta_acc)
        except (Error, ValueError) as exception:
            raise ParserError(f"Line {line_number}: {exception}")
        if not math.isfinite(delta_acc):
            raise ParserError(f"Line {line_number}: delta {delta_text!r} isn't finite.")
        samples.append(sample)

    if dataset is None:
        raise ParserError("Missing #doa header.")
    return dataset.with_samples(tuple(samples))


def load_dataset(path: Path) -> DoADataset:
    """
    Loads a dataset file.
    :param path: the path of the file
    :return: the DoADataset
    :raises OSError: if the file can't be read
    :raises ParserError: from parse_dataset
    """
    with open(path, mode="r", encoding="utf-8") as file:
        return parse_dataset(file)
