from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Protocol, Sequence

import numpy as np

from .config import Backend, TrainConfig
from .metrics import mean_squared_error
from .network import Network, fit_mlp, fit_ridge
from ..dataset.doa import DoADataset, FeatureMode, build_features, feature_width
from ..encoding.difference import DiffFeature, diff, diff_to_feature
from ..encoding.onehot import OneHotEncoding, encode_onehot
from ..exceptions import DimensionMismatchError, EmptyDatasetError, SpecMismatchError
from ..space.architecture import Architecture
from ..space.spec import SearchSpaceSpec


class DeltaPredictor(Protocol):
    """Anything that can predict the accuracy change of moving from an anchor to each of its neighbors."""

    def predict_deltas(self, anchor: Architecture, neighbors: Sequence[Architecture]) -> np.ndarray:
        ...  # pragma: no cover


@dataclass(frozen=True)
class PredictorModel:
    """F(a_i, a_j): a regressor from difference features (optionally with the anchor) to delta-accuracy."""
    spec: SearchSpaceSpec
    mode: FeatureMode
    backend: Backend
    network: Network
    l2: float
    train_loss: float

    def __post_init__(self) -> None:
        if self.network.input_dim != self.input_dim:
            raise DimensionMismatchError(f"A {self.mode} model for this space needs {self.input_dim} inputs, "
                                         f"the network takes {self.network.input_dim}.")

    @property
    def input_dim(self) -> int:
        return feature_width(self.spec, self.mode)

    def predict_features(self, features: np.ndarray) -> np.ndarray:
        """
        Predicts deltas for a batch of feature rows laid out for the model's mode.
        :raises DimensionMismatchError: if the width doesn't match
        """
        return self.network.predict(features)

    def predict_deltas(self, anchor: Architecture, neighbors: Sequence[Architecture]) -> np.ndarray:
        """
        Predicts the accuracy change from an anchor to each neighbor.
        :param anchor: the architecture to move from
        :param neighbors: the candidate architectures
        :return: one predicted delta per neighbor, in order
        :raises SpecMismatchError: if the anchor belongs to another space
        """
        if anchor.spec != self.spec:
            raise SpecMismatchError("The anchor doesn't belong to the model's search space.")
        if not neighbors:
            return np.zeros(0, dtype=np.float64)

        anchor_feature: OneHotEncoding = encode_onehot(anchor)
        features: np.ndarray = np.stack([build_features(diff_to_feature(diff(anchor, neighbor), self.spec),
                                                        anchor_feature, self.mode) for neighbor in neighbors])
        return self.predict_features(features)


def fit_network(features: np.ndarray, targets: np.ndarray, config: TrainConfig, backend: Backend) -> Network:
    """
    Fits a network with the requested backend.
    :param features: a matrix of shape (N, D)
    :param targets: a vector of N targets
    :param config: the training settings
    :param backend: ridge (closed form) or mlp (gradient descent)
    :return: the fitted Network
    :raises EmptyDatasetError: if there are no rows
    """
    if features.shape[0] == 0:
        raise EmptyDatasetError("Can't fit a predictor without samples.")
    match backend:
        case Backend.RIDGE:
            return fit_ridge(features, targets, config.l2)
        case Backend.MLP:
            return fit_mlp(features, targets, config)
    raise ValueError(f"Unknown backend {backend!r}.")  # pragma: no cover


def train(dataset: DoADataset, config: TrainConfig, mode: FeatureMode = FeatureMode.DIFF_ONLY,
          backend: Backend = Backend.MLP) -> PredictorModel:
    """
    Trains a delta predictor on a DoA dataset. The dataset isn't modified.
    :param dataset: the training samples
    :param config: the training settings
    :param mode: which features the predictor sees
    :param backend: ridge or mlp
    :return: the trained model, carrying its final training loss (MSE in delta units)
    :raises EmptyDatasetError: if the dataset has no samples
    :raises DimensionMismatchError: if a sample's features don't match the dataset's space
    """
    if not dataset.samples:
        raise EmptyDatasetError("Can't train a predictor on an empty dataset.")
    for sample in dataset.samples:
        if sample.feature.shape != (dataset.spec.onehot_dim,) or (
                mode is not FeatureMode.DIFF_ONLY and (sample.anchor_feature is None
                                                       or sample.anchor_feature.shape != sample.feature.shape)):
            raise DimensionMismatchError(f"Sample {sample.anchor_key} {sample.diff} doesn't have "
                                         f"{feature_width(dataset.spec, mode)} {mode} features.")

    features: np.ndarray = dataset.feature_matrix(mode)
    targets: np.ndarray = dataset.targets()
    network: Network = fit_network(features, targets, config, backend)
    train_loss: float = mean_squared_error(network.predict(features), targets)
    logging.debug(f"Trained a {backend} {mode} predictor on {len(targets)} samples, training MSE {train_loss:.6g}")
    return PredictorModel(dataset.spec, mode, backend, network, config.l2, train_loss)


def predict_delta(model: PredictorModel, feature: DiffFeature, anchor_feature: OneHotEncoding | None = None) -> float:
    """
    Predicts the delta-accuracy of one difference.
    :param model: a trained model
    :param feature: the difference feature
    :param anchor_feature: the anchor's one-hot encoding (models that see the anchor only)
    :return: the predicted delta
    :raises DimensionMismatchError: if the inputs don't match the model
    """
    row: np.ndarray = np.asarray(feature, dtype=np.float64)
    if model.mode is FeatureMode.DIFF_ONLY and anchor_feature is not None:
        raise DimensionMismatchError("This model only takes the difference feature.")
    if model.mode is not FeatureMode.DIFF_ONLY:
        if anchor_feature is None:
            raise DimensionMismatchError("This model also needs the anchor encoding.")
        row = build_features(row, np.asarray(anchor_feature, dtype=np.float64), model.mode)
    return float(model.predict_features(row.reshape(1, -1))[0])
