import statistics

import numpy as np
import pytest

from deltanas.exceptions import EmptyDatasetError, InvalidKError
from deltanas.oracle.proxy import NoisyProxy
from deltanas.oracle.synthetic import SyntheticLandscape
from deltanas.predictor.config import Backend, TrainConfig
from deltanas.predictor.experiments import AdjacencyPredictor, EncodingRow, SweepRow, compare_encodings, \
    loss_vs_edit_distance, neighbor_ranking_tau, train_adjacency
from deltanas.search.delta_nas import TrueDeltaPredictor
from deltanas.space.architecture import Architecture
from deltanas.space.operations import enumerate_space, random_architecture
from deltanas.space.spec import SearchSpaceSpec


@pytest.fixture(scope="module")
def proxy(landscape: SyntheticLandscape) -> NoisyProxy:
    return NoisyProxy(landscape, sigma=0.02, seed=1)


def test_sweep_rows(desk_spec: SearchSpaceSpec, proxy: NoisyProxy) -> None:
    rows: list[SweepRow] = loss_vs_edit_distance(desk_spec, proxy, ks=(2, 1), per_k_budget=100, config=TrainConfig(),
                                                 seed=0, backend=Backend.RIDGE)
    assert [row.k for row in rows] == [2, 1]
    assert all(row.train_size > 0 and row.test_size > 0 for row in rows)
    assert rows == loss_vs_edit_distance(desk_spec, proxy, ks=(2, 1), per_k_budget=100, config=TrainConfig(),
                                         seed=0, backend=Backend.RIDGE)


def test_loss_grows_with_edit_distance(desk_spec: SearchSpaceSpec, proxy: NoisyProxy) -> None:
    runs: list[list[SweepRow]] = [loss_vs_edit_distance(desk_spec, proxy, ks=(1, 2, 3), per_k_budget=300,
                                                        config=TrainConfig(), seed=seed, backend=Backend.RIDGE)
                                  for seed in range(5)]
    medians: list[float] = [statistics.median(run[index].test_mse for run in runs) for index in range(3)]
    assert medians == sorted(medians)


def test_sweep_errors(desk_spec: SearchSpaceSpec, proxy: NoisyProxy) -> None:
    with pytest.raises(EmptyDatasetError):
        loss_vs_edit_distance(desk_spec, proxy, ks=(1,), per_k_budget=0, config=TrainConfig(), seed=0)
    with pytest.raises(InvalidKError):
        loss_vs_edit_distance(desk_spec, proxy, ks=(1, 9), per_k_budget=10, config=TrainConfig(), seed=0)


def test_true_deltas_rank_perfectly(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape) -> None:
    anchors: list[Architecture] = [random_architecture(desk_spec, seed) for seed in range(5)]
    assert neighbor_ranking_tau(TrueDeltaPredictor(landscape), landscape, anchors) == pytest.approx(1.0)


def test_adjacency_predictor(desk_spec: SearchSpaceSpec, additive_landscape: SyntheticLandscape) -> None:
    architectures: list[Architecture] = list(enumerate_space(desk_spec, limit=6561))[::7]
    predictor: AdjacencyPredictor = train_adjacency(desk_spec, NoisyProxy(additive_landscape, sigma=0.0),
                                                    architectures, TrainConfig(l2=1e-8), Backend.RIDGE,
                                                    samples_per_encoding=2)
    anchor: Architecture = random_architecture(desk_spec, 5)
    neighbor: Architecture = random_architecture(desk_spec, 6)
    accuracies: np.ndarray = predictor.predict_accuracies([anchor, neighbor])
    assert accuracies[0] == pytest.approx(additive_landscape.score(anchor), abs=1e-6)
    assert predictor.predict_deltas(anchor, [neighbor])[0] == pytest.approx(accuracies[1] - accuracies[0])

    with pytest.raises(EmptyDatasetError):
        train_adjacency(desk_spec, NoisyProxy(additive_landscape), [], TrainConfig(), Backend.RIDGE)


def test_compare_encodings_harness(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape,
                                   proxy: NoisyProxy) -> None:
    rows: list[EncodingRow] = compare_encodings(desk_spec, proxy, landscape, train_fractions=(0.01,), seeds=(0, 1, 2),
                                                config=TrainConfig(), eval_anchors=10, limit=6561)
    assert [(row.train_fraction, row.seed, row.budget) for row in rows] == [(0.01, 0, 66), (0.01, 1, 66),
                                                                            (0.01, 2, 66)]
    assert rows == compare_encodings(desk_spec, proxy, landscape, train_fractions=(0.01,), seeds=(0, 1, 2),
                                     config=TrainConfig(), eval_anchors=10, limit=6561)
    assert statistics.fmean(row.doa_tau for row in rows) > 0
    assert statistics.fmean(row.adj_tau for row in rows) > 0

    with pytest.raises(ValueError):
        compare_encodings(desk_spec, proxy, landscape, train_fractions=(1.5,), seeds=(0,), config=TrainConfig(),
                          limit=6561)


@pytest.mark.slow
def test_difference_encoding_beats_adjacency(desk_spec: SearchSpaceSpec, landscape: SyntheticLandscape,
                                             proxy: NoisyProxy) -> None:
    """At 1% of the space, learned deltas rank single-edit neighbors better than differenced learned accuracies."""
    rows: list[EncodingRow] = compare_encodings(desk_spec, proxy, landscape, train_fractions=(0.01,), seeds=range(10),
                                                config=TrainConfig(), limit=6561)
    assert statistics.median(row.doa_tau for row in rows) - statistics.median(row.adj_tau for row in rows) >= 0.05
