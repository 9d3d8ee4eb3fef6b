"""Experiment configuration documents: YAML in, frozen dataclasses out."""
from __future__ import annotations

import builtins
import dataclasses
import json
import pathlib
import types
from dataclasses import dataclass, field
from enum import Enum, StrEnum
from hashlib import sha256
from pathlib import Path
from typing import Any, Mapping, Union, get_args, get_origin, get_type_hints

import yaml

from ..constants import DEFAULT_EDIT_DISTANCE, DEFAULT_ENUMERATION_LIMIT, DEFAULT_EPSILON, DEFAULT_OUTPUT_PATH, \
    DEFAULT_PAIR_WEIGHT, DEFAULT_PROXY_SIGMA, DEFAULT_SAMPLES_PER_ENCODING, DEFAULT_TOURNAMENT_SIZE
from ..dataset.doa import FeatureMode
from ..exceptions import ConfigError, Error
from ..predictor.config import Backend, TrainConfig
from ..search.config import SearchConfig
from ..space.spec import SearchSpaceSpec, SpaceKind, preset


class OracleType(StrEnum):
    # Seeded unary + pairwise landscape
    SYNTHETIC = "synthetic"
    # Accuracies read from a tabular benchmark file
    TABULAR = "tabular"


class SearchMethod(StrEnum):
    # Delta-NAS with the trained predictor
    DELTA_NAS = "delta_nas"
    # Delta-NAS with exact deltas
    TRUE_DELTA = "true_delta"
    RANDOM = "random"
    EVOLUTION = "evolution"


@dataclass(frozen=True)
class SpaceConfig:
    """Either a preset name or an explicit kind, n and r; the desk preset when neither is given."""
    preset: str | None = None
    kind: SpaceKind = SpaceKind.BLOCK
    n: int | None = None
    r: int | None = None

    def __post_init__(self) -> None:
        if self.preset is not None and (self.n is not None or self.r is not None):
            raise ValueError("Give either a preset or n and r, not both.")
        if self.preset is None and (self.n is None) != (self.r is None):
            raise ValueError("Give both n and r.")

    def to_spec(self) -> SearchSpaceSpec:
        """
        The configured search space.
        :raises InvalidSpecError: for an unknown preset or invalid sizes
        """
        if self.n is not None and self.r is not None:
            return SearchSpaceSpec(self.kind, self.n, self.r)
        return preset(self.preset if self.preset is not None else "desk")


@dataclass(frozen=True)
class OracleConfig:
    type: OracleType = OracleType.SYNTHETIC
    seed: int = 0
    pair_weight: float = DEFAULT_PAIR_WEIGHT
    # The tabular benchmark file (tabular oracles only)
    path: Path | None = None
    # The noisy proxy the dataset is measured with
    sigma: float = DEFAULT_PROXY_SIGMA
    proxy_seed: int = 1
    limit: int = DEFAULT_ENUMERATION_LIMIT


@dataclass(frozen=True)
class DatasetConfig:
    num_anchors: int = 1000
    k: int = DEFAULT_EDIT_DISTANCE
    samples_per_encoding: int = DEFAULT_SAMPLES_PER_ENCODING
    seed: int = 0
    symmetrize: bool = False
    # Pair every anchor with all of its k-edit neighbors instead of one
    all_neighbors: bool = False
    workers: int = 1


@dataclass(frozen=True)
class PredictorConfig:
    mode: FeatureMode = FeatureMode.DIFF_ONLY
    backend: Backend = Backend.MLP
    training: TrainConfig = field(default_factory=TrainConfig)


@dataclass(frozen=True)
class CompareConfig:
    methods: tuple[SearchMethod, ...] = (SearchMethod.DELTA_NAS, SearchMethod.RANDOM, SearchMethod.EVOLUTION)
    seeds: tuple[int, ...] = tuple(range(20))
    budget: int = 1000
    epsilon: float = DEFAULT_EPSILON
    evolution_population: int = 32
    tournament_size: int = DEFAULT_TOURNAMENT_SIZE
    workers: int = 1


@dataclass(frozen=True)
class SweepConfig:
    ks: tuple[int, ...] = (1, 2, 3)
    per_k_budget: int = 300
    seed: int = 0
    train_fraction: float = 0.8


@dataclass(frozen=True)
class EncodingsConfig:
    train_fractions: tuple[float, ...] = (0.01, 0.1)
    seeds: tuple[int, ...] = tuple(range(10))
    eval_anchors: int = 50
    # The features of the difference predictor
    mode: FeatureMode = FeatureMode.DIFF_IN_CONTEXT


@dataclass(frozen=True)
class ExperimentConfig:
    space: SpaceConfig = field(default_factory=SpaceConfig)
    oracle: OracleConfig = field(default_factory=OracleConfig)
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    predictor: PredictorConfig = field(default_factory=PredictorConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    compare: CompareConfig = field(default_factory=CompareConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    encodings: EncodingsConfig = field(default_factory=EncodingsConfig)
    output_dir: Path = DEFAULT_OUTPUT_PATH

    def section_hash(self, *sections: str) -> str:
        """
        The hash of some sections of the configuration: sha256 of their canonical JSON.
        :param sections: the section names (all of them when none are given)
        :return: the hex digest
        """
        names: tuple[str, ...] = sections or tuple(config_field.name for config_field in dataclasses.fields(self))
        document: dict[str, Any] = {name: to_plain(getattr(self, name)) for name in names}
        return sha256(canonical_json(document).encode()).hexdigest()


def to_plain(value: Any) -> Any:
    """Converts a configuration value to JSON-compatible data."""
    match value:
        case Enum():
            return value.value
        case Path():
            return value.as_posix()
        case tuple() | list():
            return [to_plain(item) for item in value]
        case _ if dataclasses.is_dataclass(value):
            return {config_field.name: to_plain(getattr(value, config_field.name))
                    for config_field in dataclasses.fields(value)}
        case _:
            return value


def canonical_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"))


def _convert(value: Any, hint: Any, key: str) -> Any:
    """Converts a YAML value to the annotated type, raising ConfigError on a mismatch."""
    origin: Any = get_origin(hint)

    # Optional values
    if origin in (Union, types.UnionType):
        options: tuple[Any, ...] = get_args(hint)
        if value is None and type(None) in options:
            return None
        (inner,) = (option for option in options if option is not type(None))
        return _convert(value, inner, key)

    if origin is tuple:
        if not isinstance(value, list):
            raise ConfigError(f"{key}: expected a list, got {value!r}.")
        item_hint: Any = get_args(hint)[0]
        return tuple(_convert(item, item_hint, f"{key}[{index}]") for index, item in enumerate(value))

    if dataclasses.is_dataclass(hint):
        return build_section(hint, value, key)
    if isinstance(hint, type) and issubclass(hint, Enum):
        try:
            return hint(value)
        except ValueError:
            raise ConfigError(f"{key}: expected one of {[member.value for member in hint]}, got {value!r}.")

    match hint:
        case builtins.bool:
            if not isinstance(value, bool):
                raise ConfigError(f"{key}: expected true or false, got {value!r}.")
            return value
        case builtins.int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{key}: expected an integer, got {value!r}.")
            return value
        case builtins.float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{key}: expected a number, got {value!r}.")
            return float(value)
        case builtins.str:
            if not isinstance(value, str):
                raise ConfigError(f"{key}: expected a string, got {value!r}.")
            return value
        case pathlib.Path:
            if not isinstance(value, str):
                raise ConfigError(f"{key}: expected a path, got {value!r}.")
            return Path(value)
    raise ConfigError(f"{key}: unsupported configuration type {hint!r}.")  # pragma: no cover


def build_section(section_type: type, document: Any, key: str = "") -> Any:
    """
    Builds a configuration dataclass from a YAML mapping; missing keys keep their defaults.
    :param section_type: the dataclass to build
    :param document: the parsed YAML mapping (None for all defaults)
    :param key: the dotted path of the section, for error messages
    :return: the dataclass instance
    :raises ConfigError: on unknown keys, mistyped values or values the dataclass rejects
    """
    if document is None:
        document = {}
    if not isinstance(document, Mapping):
        raise ConfigError(f"{key or 'The configuration'}: expected a mapping, got {document!r}.")

    hints: dict[str, Any] = get_type_hints(section_type)
    known: set[str] = {config_field.name for config_field in dataclasses.fields(section_type)}
    prefix: str = f"{key}." if key else ""
    for name in document:
        if name not in known:
            raise ConfigError(f"Unknown configuration key {prefix}{name!r}.")

    values: dict[str, Any] = {name: _convert(value, hints[name], f"{prefix}{name}") for name, value in document.items()}
    try:
        return section_type(**values)
    except (ValueError, Error) as exception:
        raise ConfigError(f"{key or 'The configuration'}: {exception}")


def apply_override(document: dict[str, Any], override: str) -> None:
    """
    Applies a "dotted.key=value" override to a parsed document; the value is parsed as a YAML scalar.
    :raises ConfigError: if the override isn't a "key=value" pair or walks through a non-mapping
    """
    key, separator, raw_value = override.partition("=")
    if not separator or not key:
        raise ConfigError(f"Expected an override of the form dotted.key=value, got {override!r}.")

    target: dict[str, Any] = document
    *parents, leaf = key.split(".")
    for parent in parents:
        child: Any = target.setdefault(parent, {})
        if not isinstance(child, dict):
            raise ConfigError(f"Can't override {key!r}: {parent!r} isn't a section.")
        target = child
    target[leaf] = yaml.safe_load(raw_value)


def parse_experiment(text: str, overrides: tuple[str, ...] = ()) -> ExperimentConfig:
    """
    Parses an experiment configuration document.
    :param text: the YAML document
    :param overrides: "dotted.key=value" overrides
    :return: an ExperimentConfig instance
    :raises ConfigError: on malformed YAML, unknown keys or invalid values
    """
    try:
        document: Any = yaml.safe_load(text)
    except yaml.YAMLError as exception:
        raise ConfigError(f"Malformed configuration: {exception}")
    if document is None:
        document = {}
    if not isinstance(document, dict):
        raise ConfigError("The configuration must be a mapping.")

    for override in overrides:
        apply_override(document, override)
    return build_section(ExperimentConfig, document)


def load_experiment(path: Path, overrides: tuple[str, ...] = ()) -> ExperimentConfig:
    """
    Loads an experiment configuration file.
    :raises OSError: if the file can't be read
    :raises ConfigError: from parse_experiment
    """
    with open(path, mode="r", encoding="utf-8") as file:
        return parse_experiment(file.read(), overrides)
