from pytest import fixture

from deltanas.dataset.doa import DoADataset, FeatureMode, aggregate_by_encoding, generate_doa_dataset
from deltanas.oracle.base import best_in_space
from deltanas.oracle.proxy import NoisyProxy
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.predictor.config import Backend, TrainConfig
from deltanas.predictor.model import PredictorModel, train
from deltanas.space.architecture import Architecture
from deltanas.space.spec import SearchSpaceSpec


@fixture(scope="package")
def additive_optimum(additive_landscape: SyntheticLandscape, desk_spec: SearchSpaceSpec) -> tuple[Architecture, float]:
    return best_in_space(additive_landscape, desk_spec, limit=6561)


@fixture(scope="package")
def optimum(landscape: SyntheticLandscape, desk_spec: SearchSpaceSpec) -> tuple[Architecture, float]:
    return best_in_space(landscape, desk_spec, limit=6561)


def _train_in_context(spec: SearchSpaceSpec, landscape: SyntheticLandscape, num_anchors: int) -> PredictorModel:
    dataset: DoADataset = generate_doa_dataset(spec, NoisyProxy(landscape, sigma=0.02, seed=1), num_anchors, k=1,
                                               samples_per_encoding=4, seed=0, all_neighbors=True)
    return train(aggregate_by_encoding(dataset, FeatureMode.DIFF_IN_CONTEXT), TrainConfig(),
                 FeatureMode.DIFF_IN_CONTEXT, Backend.RIDGE)


@fixture(scope="package")
def small_model(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> PredictorModel:
    """A ridge predictor trained on the measured neighborhoods of 60 anchors."""
    return _train_in_context(desk_spec, landscape, 60)


@fixture(scope="package")
def trained_model(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> PredictorModel:
    """A ridge predictor trained on the measured neighborhoods of 1000 anchors (16000 pairs)."""
    return _train_in_context(desk_spec, landscape, 1000)
