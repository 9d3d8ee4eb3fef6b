from __future__ import annotations

import logging
import math
import statistics
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .config import Backend, TrainConfig
from .metrics import kendall_tau, mean_squared_error
from .model import DeltaPredictor, PredictorModel, fit_network, train
from .network import Network
from ..constants import DEFAULT_ENUMERATION_LIMIT, DEFAULT_SAMPLES_PER_ENCODING
from ..dataset.doa import DoADataset, FeatureMode, aggregate_by_encoding, generate_doa_dataset, measure_neighborhoods, \
    split
from ..encoding.onehot import encode_onehot
from ..exceptions import EmptyDatasetError, UndefinedCorrelationError
from ..oracle.base import Oracle
from ..oracle.proxy import NoisyProxy
from ..seeding import make_rng
from ..space.architecture import Architecture
from ..space.operations import count_neighbors_k, enumerate_space, neighbors_k
from ..space.spec import SearchSpaceSpec


@dataclass(frozen=True)
class SweepRow:
    k: int
    test_mse: float
    test_tau: float
    train_size: int
    test_size: int


def _safe_tau(predicted: Sequence[float] | np.ndarray, truth: Sequence[float] | np.ndarray) -> float:
    try:
        return kendall_tau(predicted, truth)
    except UndefinedCorrelationError:
        return math.nan


def loss_vs_edit_distance(spec: SearchSpaceSpec, proxy: NoisyProxy, ks: Sequence[int], per_k_budget: int,
                          config: TrainConfig, seed: int, backend: Backend = Backend.MLP,
                          mode: FeatureMode = FeatureMode.DIFF_ONLY,
                          samples_per_encoding: int = DEFAULT_SAMPLES_PER_ENCODING,
                          train_fraction: float = 0.8) -> list[SweepRow]:
    """
    Measures how well deltas can be learned as the edit distance between the paired architectures grows.
    Every k gets the same number of anchors, the same seed and the same training settings; each run generates,
      aggregates, splits by encoding, trains and evaluates on the held-out encodings.
    :param spec: the search space
    :param proxy: the noisy accuracy estimator
    :param ks: the edit distances to sweep
    :param per_k_budget: the number of anchors generated for every k
    :param config: the training settings
    :param seed: the seed of every generation and split
    :param backend: ridge or mlp
    :param mode: which features the predictor sees
    :param samples_per_encoding: the number of repeated measurements of each pair
    :param train_fraction: the share of encodings used for training
    :return: one row per k, in the given order (test_tau is nan when undefined)
    :raises InvalidKError: if any k is out of range (checked before any work is done)
    :raises EmptyDatasetError: if per_k_budget is 0
    :raises InsufficientGroupsError: if a dataset has too few encodings to split
    """
    for k in ks:
        count_neighbors_k(spec, k)
    if per_k_budget < 1:
        raise EmptyDatasetError(f"A per-k budget of {per_k_budget} anchors produces no samples.")

    rows: list[SweepRow] = []
    for k in ks:
        dataset: DoADataset = generate_doa_dataset(spec, proxy, per_k_budget, k, samples_per_encoding, seed)
        aggregated: DoADataset = aggregate_by_encoding(dataset, mode)
        train_set, test_set = split(aggregated, train_fraction, seed)
        model: PredictorModel = train(train_set, config, mode, backend)

        predicted: np.ndarray = model.predict_features(test_set.feature_matrix(mode))
        truth: np.ndarray = test_set.targets()
        row: SweepRow = SweepRow(k, mean_squared_error(predicted, truth), _safe_tau(predicted, truth),
                                 len(train_set), len(test_set))
        logging.debug(f"k={k}: test MSE {row.test_mse:.6g}, tau {row.test_tau:.4f} "
                      f"({row.train_size} train / {row.test_size} test encodings)")
        rows.append(row)
    return rows


@dataclass(frozen=True)
class AdjacencyPredictor:
    """
    The direct-accuracy baseline: a regressor from an architecture's one-hot encoding to its accuracy.
    Deltas are the difference of two predicted accuracies.
    """
    spec: SearchSpaceSpec
    network: Network

    def predict_accuracies(self, architectures: Sequence[Architecture]) -> np.ndarray:
        return self.network.predict(np.stack([encode_onehot(architecture) for architecture in architectures]))

    def predict_deltas(self, anchor: Architecture, neighbors: Sequence[Architecture]) -> np.ndarray:
        if not neighbors:
            return np.zeros(0, dtype=np.float64)
        accuracies: np.ndarray = self.predict_accuracies([anchor, *neighbors])
        return accuracies[1:] - accuracies[0]


def train_adjacency(spec: SearchSpaceSpec, proxy: NoisyProxy, architectures: Sequence[Architecture],
                    config: TrainConfig, backend: Backend,
                    samples_per_encoding: int = DEFAULT_SAMPLES_PER_ENCODING) -> AdjacencyPredictor:
    """
    Trains the direct-accuracy baseline on the mean of samples_per_encoding proxy measurements per architecture.
    :raises EmptyDatasetError: if there are no architectures
    """
    if not architectures:
        raise EmptyDatasetError("Can't train the adjacency baseline without architectures.")
    features: np.ndarray = np.stack([encode_onehot(architecture) for architecture in architectures])
    targets: np.ndarray = np.array([statistics.fmean(proxy.score(architecture, repeat)
                                                     for repeat in range(samples_per_encoding))
                                    for architecture in architectures], dtype=np.float64)
    return AdjacencyPredictor(spec, fit_network(features, targets, config, backend))


def neighbor_ranking_tau(predictor: DeltaPredictor, oracle: Oracle, anchors: Sequence[Architecture]) -> float:
    """
    The mean, over anchors, of the Kendall tau between predicted and true deltas to every single-edit neighbor.
    Anchors whose tau is undefined are skipped.
    :param predictor: the predictor to evaluate
    :param oracle: the true fitness source
    :param anchors: the anchors to rank around
    :return: the mean tau (nan if no anchor had a defined tau)
    """
    taus: list[float] = []
    for anchor in anchors:
        neighbors: list[Architecture] = list(neighbors_k(anchor, 1))
        anchor_score: float = oracle.score(anchor)
        truth: list[float] = [oracle.score(neighbor) - anchor_score for neighbor in neighbors]
        tau: float = _safe_tau(predictor.predict_deltas(anchor, neighbors), truth)
        if not math.isnan(tau):
            taus.append(tau)
    return statistics.fmean(taus) if taus else math.nan


@dataclass(frozen=True)
class EncodingRow:
    train_fraction: float
    seed: int
    budget: int
    doa_tau: float
    adj_tau: float


def compare_encodings(spec: SearchSpaceSpec, proxy: NoisyProxy, true_oracle: Oracle,
                      train_fractions: Sequence[float], seeds: Sequence[int], config: TrainConfig,
                      backend: Backend = Backend.RIDGE, samples_per_encoding: int = DEFAULT_SAMPLES_PER_ENCODING,
                      eval_anchors: int = 50, limit: int = DEFAULT_ENUMERATION_LIMIT,
                      mode: FeatureMode = FeatureMode.DIFF_IN_CONTEXT) -> list[EncodingRow]:
    """
    Compares the difference encoding with the one-hot (adjacency) encoding at equal data budgets.
    For every fraction and seed, ceil(fraction * |A|) architectures are drawn. They train the adjacency baseline
      on their own measured accuracies and the difference predictor on the measured deltas to all of their
      single-edit neighbors, averaged per encoding. Both are scored by neighbor_ranking_tau on eval_anchors
      architectures outside the drawn ones.
    :param spec: an enumerable search space
    :param proxy: the noisy accuracy estimator both predictors learn from
    :param true_oracle: the fitness source the rankings are compared with
    :param train_fractions: the shares of the space used as training budget
    :param seeds: the seeds to repeat each fraction with
    :param config: the training settings (its seed is overridden per run)
    :param backend: ridge or mlp, used for both predictors
    :param samples_per_encoding: the number of proxy measurements per training architecture or pair
    :param eval_anchors: the number of held-out anchors
    :param limit: the largest space that may be enumerated
    :param mode: which features the difference predictor sees
    :return: one row per (fraction, seed)
    :raises SpaceTooLargeError: if the space can't be enumerated
    """
    architectures: list[Architecture] = list(enumerate_space(spec, limit))
    rows: list[EncodingRow] = []
    for train_fraction in train_fractions:
        if not 0.0 < train_fraction < 1.0:
            raise ValueError(f"train_fraction must lie in (0, 1), got {train_fraction}.")
        budget: int = math.ceil(train_fraction * len(architectures))
        for seed in seeds:
            order: np.ndarray = make_rng(seed).permutation(len(architectures))
            training: list[Architecture] = [architectures[index] for index in order[:budget]]
            held_out: list[Architecture] = [architectures[index] for index in order[budget:budget + eval_anchors]]
            run_config: TrainConfig = replace(config, seed=seed)

            adjacency: AdjacencyPredictor = train_adjacency(spec, proxy, training, run_config, backend,
                                                            samples_per_encoding)
            dataset: DoADataset = measure_neighborhoods(spec, proxy, training, 1, samples_per_encoding, seed)
            doa: PredictorModel = train(aggregate_by_encoding(dataset, mode), run_config, mode, backend)

            row: EncodingRow = EncodingRow(train_fraction, seed, budget,
                                           neighbor_ranking_tau(doa, true_oracle, held_out),
                                           neighbor_ranking_tau(adjacency, true_oracle, held_out))
            logging.debug(f"fraction={train_fraction} seed={seed}: DoA tau {row.doa_tau:.4f}, "
                          f"ADJ tau {row.adj_tau:.4f}")
            rows.append(row)
    return rows
