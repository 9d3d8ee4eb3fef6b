from dataclasses import replace

import numpy as np
import pytest

from deltanas.dataset.doa import DoADataset, FeatureMode, aggregate_by_encoding, generate_doa_dataset, make_sample
from deltanas.encoding.difference import DiffEncoding, Edit, diff, diff_to_feature
from deltanas.encoding.onehot import encode_onehot
from deltanas.exceptions import DimensionMismatchError, EmptyDatasetError, SpecMismatchError
from deltanas.oracle.proxy import NoisyProxy
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.predictor.config import Backend, TrainConfig
from deltanas.predictor.metrics import kendall_tau, mean_squared_error
from deltanas.predictor.model import PredictorModel, feature_width, predict_delta, train
from deltanas.predictor.network import init_network
from deltanas.space.architecture import Architecture
from deltanas.space.operations import neighbors_k, random_architecture
from deltanas.space.spec import SearchSpaceSpec

_EXACT_RIDGE: TrainConfig = TrainConfig(l2=1e-8)


def test_ridge_is_exact_on_additive_landscape(noiseless_additive_dataset: DoADataset, desk_spec: SearchSpaceSpec,
                                              additive_landscape: SyntheticLandscape) -> None:
    model: PredictorModel = train(noiseless_additive_dataset, _EXACT_RIDGE, backend=Backend.RIDGE)
    assert model.train_loss < 1e-10

    anchor: Architecture = random_architecture(desk_spec, 99)
    neighbors: list[Architecture] = list(neighbors_k(anchor, 1))
    truth: np.ndarray = np.array([additive_landscape.score(neighbor) - additive_landscape.score(anchor)
                                  for neighbor in neighbors])
    np.testing.assert_allclose(model.predict_deltas(anchor, neighbors), truth, atol=1e-5)


def test_train_does_not_modify_dataset(noiseless_additive_dataset: DoADataset) -> None:
    before: list[float] = [sample.delta_acc for sample in noiseless_additive_dataset.samples]
    train(noiseless_additive_dataset, _EXACT_RIDGE, backend=Backend.RIDGE)
    assert [sample.delta_acc for sample in noiseless_additive_dataset.samples] == before


def test_mlp_is_deterministic(noiseless_additive_dataset: DoADataset, fast_config: TrainConfig,
                              desk_spec: SearchSpaceSpec) -> None:
    first: PredictorModel = train(noiseless_additive_dataset, fast_config)
    second: PredictorModel = train(noiseless_additive_dataset, fast_config)
    anchor: Architecture = random_architecture(desk_spec, 1)
    neighbors: list[Architecture] = list(neighbors_k(anchor, 1))
    np.testing.assert_array_equal(first.predict_deltas(anchor, neighbors), second.predict_deltas(anchor, neighbors))
    assert first.train_loss == second.train_loss

    reseeded: PredictorModel = train(noiseless_additive_dataset, replace(fast_config, seed=1))
    assert not np.array_equal(first.predict_deltas(anchor, neighbors), reseeded.predict_deltas(anchor, neighbors))


def test_mlp_learns_deltas(noiseless_additive_dataset: DoADataset) -> None:
    config: TrainConfig = TrainConfig(epochs=100, batch_size=32, learning_rate=5e-3, hidden_layers=(32,))
    model: PredictorModel = train(noiseless_additive_dataset, config)
    assert model.train_loss < 0.1 * float(np.var(noiseless_additive_dataset.targets()))


def test_single_sample_ridge(desk_spec: SearchSpaceSpec) -> None:
    anchor: Architecture = random_architecture(desk_spec, 0)
    difference: DiffEncoding = diff(anchor, random_architecture(desk_spec, 1))
    dataset: DoADataset = DoADataset(desk_spec, len(difference), 1, 0, (make_sample(anchor, difference, 0.05),))

    model: PredictorModel = train(dataset, TrainConfig(), backend=Backend.RIDGE)
    assert predict_delta(model, diff_to_feature(difference, desk_spec)) == pytest.approx(0.05)
    assert np.isfinite(model.train_loss)


def test_zero_feature_predicts_the_bias(noiseless_additive_dataset: DoADataset, desk_spec: SearchSpaceSpec) -> None:
    model: PredictorModel = train(noiseless_additive_dataset, TrainConfig(), backend=Backend.RIDGE)
    assert predict_delta(model, np.zeros(desk_spec.onehot_dim)) == pytest.approx(float(model.network.biases[0][0]))


def test_ridge_prediction_is_a_dot_product(noiseless_additive_dataset: DoADataset,
                                           desk_spec: SearchSpaceSpec) -> None:
    model: PredictorModel = train(noiseless_additive_dataset, TrainConfig(), backend=Backend.RIDGE)
    feature: np.ndarray = diff_to_feature(DiffEncoding((Edit(2, 0, 1), Edit(5, 2, 0))), desk_spec)
    expected: float = float(feature @ model.network.weights[0][:, 0] + model.network.biases[0][0])
    assert predict_delta(model, feature) == pytest.approx(expected)


def test_symmetrized_ridge_is_antisymmetric(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> None:
    dataset: DoADataset = generate_doa_dataset(desk_spec, NoisyProxy(landscape, sigma=0.02, seed=5), num_anchors=300,
                                               k=1, samples_per_encoding=2, seed=1, symmetrize=True)
    model: PredictorModel = train(aggregate_by_encoding(dataset), TrainConfig(), backend=Backend.RIDGE)

    anchor: Architecture = random_architecture(desk_spec, 3)
    for neighbor in neighbors_k(anchor, 1):
        forward: float = float(model.predict_deltas(anchor, [neighbor])[0])
        backward: float = float(model.predict_deltas(neighbor, [anchor])[0])
        assert forward == pytest.approx(-backward, abs=1e-9)


def test_diff_plus_anchor(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> None:
    dataset: DoADataset = generate_doa_dataset(desk_spec, NoisyProxy(landscape, sigma=0.0), num_anchors=100, k=1,
                                               samples_per_encoding=1, seed=2)
    model: PredictorModel = train(dataset, TrainConfig(), mode=FeatureMode.DIFF_PLUS_ANCHOR, backend=Backend.RIDGE)
    assert model.input_dim == feature_width(desk_spec, FeatureMode.DIFF_PLUS_ANCHOR) == 2 * desk_spec.onehot_dim

    anchor: Architecture = random_architecture(desk_spec, 4)
    neighbor: Architecture = next(iter(neighbors_k(anchor, 1)))
    expected: float = predict_delta(model, diff_to_feature(diff(anchor, neighbor), desk_spec), encode_onehot(anchor))
    assert model.predict_deltas(anchor, [neighbor])[0] == pytest.approx(expected)
    with pytest.raises(DimensionMismatchError):
        predict_delta(model, diff_to_feature(diff(anchor, neighbor), desk_spec))


def test_diff_in_context(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> None:
    dataset: DoADataset = generate_doa_dataset(desk_spec, NoisyProxy(landscape, sigma=0.0), num_anchors=100, k=1,
                                               samples_per_encoding=1, seed=2, all_neighbors=True)
    model: PredictorModel = train(dataset, _EXACT_RIDGE, mode=FeatureMode.DIFF_IN_CONTEXT, backend=Backend.RIDGE)
    assert model.input_dim == feature_width(desk_spec, FeatureMode.DIFF_IN_CONTEXT)

    anchor: Architecture = random_architecture(desk_spec, 7)
    neighbors: list[Architecture] = list(neighbors_k(anchor, 1))
    expected: list[float] = [predict_delta(model, diff_to_feature(diff(anchor, neighbor), desk_spec),
                                           encode_onehot(anchor)) for neighbor in neighbors]
    np.testing.assert_allclose(model.predict_deltas(anchor, neighbors), expected)
    # Single-edit deltas of a landscape with pairwise terms are linear in these features
    truth: list[float] = [landscape.score(neighbor) - landscape.score(anchor) for neighbor in neighbors]
    assert kendall_tau(model.predict_deltas(anchor, neighbors), truth) > 0.9
    with pytest.raises(DimensionMismatchError):
        predict_delta(model, diff_to_feature(diff(anchor, neighbors[0]), desk_spec))


def test_mlp_agrees_with_ridge_on_held_out_anchors(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> None:
    proxy: NoisyProxy = NoisyProxy(landscape, sigma=0.02, seed=3)
    training: DoADataset = generate_doa_dataset(desk_spec, proxy, num_anchors=500, k=1, samples_per_encoding=2, seed=0)
    held_out: DoADataset = generate_doa_dataset(desk_spec, proxy, num_anchors=200, k=1, samples_per_encoding=2,
                                                seed=1)
    ridge: PredictorModel = train(training, TrainConfig(), backend=Backend.RIDGE)
    mlp: PredictorModel = train(training, TrainConfig(epochs=50, batch_size=32, learning_rate=5e-3,
                                                      hidden_layers=(32,)))

    features: np.ndarray = held_out.feature_matrix(FeatureMode.DIFF_ONLY)
    ridge_deltas: np.ndarray = ridge.predict_features(features)
    mlp_deltas: np.ndarray = mlp.predict_features(features)
    assert kendall_tau(mlp_deltas, ridge_deltas) > 0.7
    # Neither fits the fresh measurements much worse than the other
    ridge_error: float = mean_squared_error(ridge_deltas, held_out.targets())
    mlp_error: float = mean_squared_error(mlp_deltas, held_out.targets())
    assert mlp_error < 1.25 * ridge_error and ridge_error < 1.25 * mlp_error


def test_errors(noiseless_additive_dataset: DoADataset, desk_spec: SearchSpaceSpec,
                block_spec: SearchSpaceSpec) -> None:
    with pytest.raises(EmptyDatasetError):
        train(noiseless_additive_dataset.with_samples(()), TrainConfig())

    model: PredictorModel = train(noiseless_additive_dataset, TrainConfig(), backend=Backend.RIDGE)
    with pytest.raises(SpecMismatchError):
        model.predict_deltas(random_architecture(block_spec, 0), [])
    with pytest.raises(DimensionMismatchError):
        predict_delta(model, np.zeros(desk_spec.onehot_dim), np.zeros(desk_spec.onehot_dim))
    with pytest.raises(DimensionMismatchError):
        predict_delta(model, np.zeros(desk_spec.onehot_dim + 1))
    with pytest.raises(DimensionMismatchError):
        PredictorModel(desk_spec, FeatureMode.DIFF_ONLY, Backend.MLP, init_network((5, 1), 0), 1e-4, 0.0)

    assert model.predict_deltas(random_architecture(desk_spec, 0), []).shape == (0,)
