from pathlib import Path
from typing import Callable

import pytest

# An 81-architecture block space, small enough to run every command in a few seconds
_TINY_EXPERIMENT: str = """\
space:
  kind: block
  n: 4
  r: 3
oracle:
  seed: 5
dataset:
  num_anchors: 40
  samples_per_encoding: 2
  seed: 1
predictor:
  backend: ridge
  training:
    epochs: 5
search:
  population_size: 8
  max_iterations: 10
compare:
  methods: [delta_nas, true_delta, random, evolution]
  seeds: [0, 1]
  budget: 12
  evolution_population: 6
  tournament_size: 3
sweep:
  ks: [1, 2]
  per_k_budget: 40
encodings:
  train_fractions: [0.25]
  seeds: [0]
  eval_anchors: 5
"""


def write_experiment(directory: Path, output_dir: Path) -> Path:
    path: Path = directory / "experiment.yaml"
    path.write_text(_TINY_EXPERIMENT + f"output_dir: {output_dir.as_posix()}\n", encoding="utf-8")
    return path


@pytest.fixture
def experiment_writer() -> Callable[[Path, Path], Path]:
    """Writes the tiny experiment into a directory, with the given output directory."""
    return write_experiment


@pytest.fixture
def experiment_path(tmp_path: Path) -> Path:
    return write_experiment(tmp_path, tmp_path / "runs")
