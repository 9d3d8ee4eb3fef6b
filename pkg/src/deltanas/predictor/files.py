from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .config import Backend
from .model import PredictorModel
from .network import Network
from ..dataset.doa import FeatureMode
from ..exceptions import Error, ParserError
from ..records.provenance import ConfigStamp
from ..records.serializable import MappingGenerator, Serializable
from ..space.spec import SearchSpaceSpec, SpaceKind


@dataclass(frozen=True)
class ModelRecord(Serializable):
    kind: SpaceKind
    n: int
    r: int
    mode: FeatureMode
    backend: Backend
    layers: int
    l2: float
    train_loss: float
    target_shift: float
    target_scale: float

    @staticmethod
    def _tag() -> str:
        return "model"

    @staticmethod
    def _data_mappings() -> MappingGenerator:
        yield "kind", "kind"
        yield "n", "n"
        yield "r", "r"
        yield "mode", "mode"
        yield "backend", "backend"
        yield "layers", "layers"
        yield "l2", "l2"
        yield "train_loss", "train_loss"
        yield "target_shift", "shift"
        yield "target_scale", "scale"

    @classmethod
    def from_model(cls, model: PredictorModel) -> ModelRecord:
        return cls(model.spec.kind, model.spec.n, model.spec.r, model.mode, model.backend,
                   len(model.network.weights), model.l2, model.train_loss,
                   model.network.target_shift, model.network.target_scale)


@dataclass(frozen=True)
class LayerRecord(Serializable):
    index: int
    rows: int
    cols: int

    @staticmethod
    def _tag() -> str:
        return "layer"

    @staticmethod
    def _data_mappings() -> MappingGenerator:
        yield "index", "index"
        yield "rows", "rows"
        yield "cols", "cols"


def _format_row(values: np.ndarray) -> str:
    # repr round-trips every float64 exactly
    return " ".join(repr(float(value)) for value in values)


def format_model(model: PredictorModel, config_hash: str | None = None) -> str:
    """
    Formats a model as text: an optional "#config" stamp, the "#model" header, then per layer a "#layer" header,
      one line per weight-matrix row and one line of biases.
    :param model: the model to format
    :param config_hash: the hash of the configuration that produced the model
    :return: the file contents
    """
    lines: list[str] = [ConfigStamp(config_hash).serialize()] if config_hash is not None else []
    lines.append(ModelRecord.from_model(model).serialize())
    for index, (weight, bias) in enumerate(zip(model.network.weights, model.network.biases)):
        lines.append(LayerRecord(index, *weight.shape).serialize())
        lines.extend(_format_row(row) for row in weight)
        lines.append(_format_row(bias))
    return "\n".join(lines) + "\n"


def save_model(model: PredictorModel, path: Path, config_hash: str | None = None) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8") as file:
        file.write(format_model(model, config_hash))


def _parse_row(line_number: int, line: str, width: int) -> np.ndarray:
    try:
        values: list[float] = [float(token) for token in line.split()]
    except ValueError:
        raise ParserError(f"Line {line_number}: expected {width} numbers, got {line!r}.")
    if len(values) != width:
        raise ParserError(f"Line {line_number}: expected {width} numbers, got {len(values)}.")
    if not all(math.isfinite(value) for value in values):
        raise ParserError(f"Line {line_number}: parameters must be finite.")
    return np.array(values, dtype=np.float64)


def parse_model(lines: Iterable[str]) -> PredictorModel:
    """
    Parses a model file.
    :param lines: the lines of the file
    :return: the PredictorModel, predicting bitwise-identically to the saved one
    :raises ParserError: on a malformed header, layer or parameter line (with its line number)
    """
    numbered: Iterator[tuple[int, str]] = ((line_number, line.strip()) for line_number, line
                                           in enumerate(lines, start=1) if line.strip()
                                           and not line.startswith("#config"))

    def _next(expected: str) -> tuple[int, str]:
        try:
            return next(numbered)
        except StopIteration:
            raise ParserError(f"Unexpected end of file, expected {expected}.")

    line_number, line = _next("a #model header")
    try:
        header: ModelRecord = ModelRecord.deserialize(line)
        spec: SearchSpaceSpec = SearchSpaceSpec(header.kind, header.n, header.r)
    except Error as exception:
        raise ParserError(f"Line {line_number}: {exception}")
    if header.layers < 1:
        raise ParserError(f"Line {line_number}: a model needs at least one layer.")

    weights: list[np.ndarray] = []
    biases: list[np.ndarray] = []
    for expected_index in range(header.layers):
        line_number, line = _next(f"layer {expected_index}")
        try:
            layer: LayerRecord = LayerRecord.deserialize(line)
        except Error as exception:
            raise ParserError(f"Line {line_number}: {exception}")
        if layer.index != expected_index or layer.rows < 1 or layer.cols < 1:
            raise ParserError(f"Line {line_number}: unexpected layer header {line!r}.")
        if weights and weights[-1].shape[1] != layer.rows:
            raise ParserError(f"Line {line_number}: layer {layer.index} doesn't chain onto the previous layer.")

        rows: list[np.ndarray] = [_parse_row(*_next(f"row {row} of layer {layer.index}"), width=layer.cols)
                                  for row in range(layer.rows)]
        weights.append(np.stack(rows))
        biases.append(_parse_row(*_next(f"the biases of layer {layer.index}"), width=layer.cols))

    leftover: tuple[int, str] | None = next(numbered, None)
    if leftover is not None:
        raise ParserError(f"Line {leftover[0]}: unexpected trailing content.")
    if weights[-1].shape[1] != 1:
        raise ParserError("The last layer must have a single output.")

    network: Network = Network(tuple(weights), tuple(biases), header.target_shift, header.target_scale)
    try:
        return PredictorModel(spec, header.mode, header.backend, network, header.l2, header.train_loss)
    except Error as exception:
        raise ParserError(str(exception))


def load_model(path: Path) -> PredictorModel:
    """
    Loads a model file.
    :raises OSError: if the file can't be read
    :raises ParserError: from parse_model
    """
    with open(path, mode="r", encoding="utf-8") as file:
        return parse_model(file)
