from pathlib import Path

import numpy as np
import pytest

from deltanas.dataset.doa import DoADataset
from deltanas.exceptions import ParserError
from deltanas.predictor.config import Backend, TrainConfig
from deltanas.predictor.files import format_model, load_model, parse_model, save_model
from deltanas.predictor.model import PredictorModel, train
from deltanas.space.architecture import Architecture
from deltanas.space.operations import neighbors_k, random_architecture
from deltanas.space.spec import SearchSpaceSpec


@pytest.fixture(scope="module")
def mlp_model(noiseless_additive_dataset: DoADataset, fast_config: TrainConfig) -> PredictorModel:
    return train(noiseless_additive_dataset, fast_config)


@pytest.mark.parametrize("backend", (Backend.MLP, Backend.RIDGE))
def test_round_trip(tmp_path: Path, noiseless_additive_dataset: DoADataset, fast_config: TrainConfig,
                    desk_spec: SearchSpaceSpec, backend: Backend) -> None:
    model: PredictorModel = train(noiseless_additive_dataset, fast_config, backend=backend)
    path: Path = tmp_path / "models" / "predictor.txt"
    save_model(model, path, config_hash="cafe")

    loaded: PredictorModel = load_model(path)
    assert (loaded.spec, loaded.mode, loaded.backend, loaded.l2, loaded.train_loss) == \
        (model.spec, model.mode, model.backend, model.l2, model.train_loss)
    for left, right in zip(loaded.network.parameters(), model.network.parameters()):
        np.testing.assert_array_equal(left, right)

    anchor: Architecture = random_architecture(desk_spec, 8)
    neighbors: list[Architecture] = list(neighbors_k(anchor, 2))
    np.testing.assert_array_equal(loaded.predict_deltas(anchor, neighbors), model.predict_deltas(anchor, neighbors))
    assert format_model(loaded, config_hash="cafe") == path.read_text(encoding="utf-8")


def test_layout(mlp_model: PredictorModel) -> None:
    lines: list[str] = format_model(mlp_model).splitlines()
    assert lines[0].startswith("#model kind=block n=8 r=3 mode=diff_only backend=mlp layers=2 ")
    assert lines[1] == "#layer index=0 rows=24 cols=16"
    assert lines[27] == "#layer index=1 rows=16 cols=1"
    assert len(lines) == 1 + (1 + 24 + 1) + (1 + 16 + 1)


def _lines(model: PredictorModel) -> list[str]:
    return format_model(model).splitlines()


def test_parse_errors(mlp_model: PredictorModel) -> None:
    lines: list[str] = _lines(mlp_model)
    with pytest.raises(ParserError, match="end of file"):
        parse_model([])
    with pytest.raises(ParserError, match="end of file"):
        parse_model(lines[:-1])
    with pytest.raises(ParserError, match="Line 1"):
        parse_model(["#model kind=block n=8"] + lines[1:])
    with pytest.raises(ParserError, match="trailing content"):
        parse_model(lines + ["0.5"])
    with pytest.raises(ParserError, match="Line 3: expected 16 numbers"):
        parse_model(lines[:2] + ["1.0 2.0"] + lines[3:])
    with pytest.raises(ParserError, match="Line 3"):
        parse_model(lines[:2] + [" ".join(["nan"] * 16)] + lines[3:])
    with pytest.raises(ParserError, match="Line 2: unexpected layer header"):
        parse_model(lines[:1] + ["#layer index=1 rows=24 cols=16"] + lines[2:])
    with pytest.raises(ParserError, match="Line 28: layer 1 doesn.t chain"):
        parse_model(lines[:27] + ["#layer index=1 rows=15 cols=1"] + lines[28:])


def test_parse_wrong_width(mlp_model: PredictorModel) -> None:
    lines: list[str] = _lines(mlp_model)
    lines[0] = lines[0].replace("n=8", "n=7")
    with pytest.raises(ParserError):
        parse_model(lines)
