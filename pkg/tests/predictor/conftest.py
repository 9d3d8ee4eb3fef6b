from pytest import fixture

from deltanas.dataset.doa import DoADataset, generate_doa_dataset
from deltanas.oracle.proxy import NoisyProxy
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.predictor.config import TrainConfig
from deltanas.space.spec import SearchSpaceSpec


@fixture(scope="package")
def fast_config() -> TrainConfig:
    return TrainConfig(epochs=20, batch_size=32, learning_rate=1e-2, hidden_layers=(16,), seed=0)


@fixture(scope="package")
def noiseless_additive_dataset(desk_spec: SearchSpaceSpec, additive_landscape: SyntheticLandscape) -> DoADataset:
    """Exact single-edit deltas of a landscape whose deltas are linear in the difference feature."""
    return generate_doa_dataset(desk_spec, NoisyProxy(additive_landscape, sigma=0.0), num_anchors=500, k=1,
                                samples_per_encoding=1, seed=0)
