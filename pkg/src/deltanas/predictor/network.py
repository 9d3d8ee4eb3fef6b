from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .config import TrainConfig
from ..exceptions import DimensionMismatchError
from ..seeding import SeedLike, make_rng

# Activations and pre-activations of a forward pass, kept for backpropagation
_Cache = tuple[list[np.ndarray], list[np.ndarray]]

_ADAM_BETA1: float = 0.9
_ADAM_BETA2: float = 0.999
_ADAM_EPSILON: float = 1e-8
_GRAD_CHECK_FLOOR: float = 1e-6


@dataclass(frozen=True)
class Network:
    """
    A feed-forward regressor: rectifier hidden layers and a linear scalar output.
    With no hidden layers it's a linear model, which is how ridge solutions are stored.
    Outputs are mapped back to target units as raw * target_scale + target_shift.
    """
    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]
    target_shift: float = 0.0
    target_scale: float = 1.0

    def __post_init__(self) -> None:
        assert len(self.weights) == len(self.biases) >= 1, "A network needs at least one layer."
        for weight, bias in zip(self.weights, self.biases):
            assert weight.ndim == 2 and bias.shape == (weight.shape[1],), "Layer shapes are inconsistent."

    @property
    def input_dim(self) -> int:
        return int(self.weights[0].shape[0])

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.input_dim, *(int(weight.shape[1]) for weight in self.weights))

    def parameters(self) -> list[np.ndarray]:
        return [*self.weights, *self.biases]

    def predict(self, features: np.ndarray) -> np.ndarray:
        """
        Predicts targets for a batch of feature rows.
        :param features: a matrix of shape (N, input_dim)
        :return: a vector of N predictions
        :raises DimensionMismatchError: if the feature width doesn't match the network
        """
        if features.ndim != 2 or features.shape[1] != self.input_dim:
            raise DimensionMismatchError(f"Expected features of width {self.input_dim}, got shape {features.shape}.")
        raw, _ = forward(self.weights, self.biases, features)
        return raw * self.target_scale + self.target_shift


def forward(weights: tuple[np.ndarray, ...] | list[np.ndarray], biases: tuple[np.ndarray, ...] | list[np.ndarray],
            features: np.ndarray) -> tuple[np.ndarray, _Cache]:
    activations: list[np.ndarray] = [features]
    pre_activations: list[np.ndarray] = []
    hidden: np.ndarray = features
    last: int = len(weights) - 1
    for index, (weight, bias) in enumerate(zip(weights, biases)):
        pre_activation: np.ndarray = hidden @ weight + bias
        pre_activations.append(pre_activation)
        hidden = np.maximum(pre_activation, 0.0) if index < last else pre_activation
        activations.append(hidden)
    return hidden[:, 0], (activations, pre_activations)


def _loss(weights: list[np.ndarray], biases: list[np.ndarray], features: np.ndarray, targets: np.ndarray,
          l2: float) -> float:
    output, _ = forward(weights, biases, features)
    return float(np.mean((output - targets) ** 2)) + 0.5 * l2 * sum(float(np.sum(weight ** 2)) for weight in weights)


def loss_and_gradients(weights: list[np.ndarray] | tuple[np.ndarray, ...],
                       biases: list[np.ndarray] | tuple[np.ndarray, ...],
                       features: np.ndarray, targets: np.ndarray,
                       l2: float) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """
    The regularized mean-squared-error and its gradients:
      loss = mean((output - target)^2) + l2 / 2 * sum of squared weights (biases aren't penalized).
    :return: the loss, the weight gradients and the bias gradients
    """
    output, (activations, pre_activations) = forward(weights, biases, features)
    residual: np.ndarray = output - targets
    loss: float = float(np.mean(residual ** 2)) + 0.5 * l2 * sum(float(np.sum(weight ** 2)) for weight in weights)

    weight_gradients: list[np.ndarray] = [np.empty(0)] * len(weights)
    bias_gradients: list[np.ndarray] = [np.empty(0)] * len(weights)
    gradient: np.ndarray = (2.0 / len(targets)) * residual[:, None]
    for index in reversed(range(len(weights))):
        if index < len(weights) - 1:
            gradient = gradient * (pre_activations[index] > 0)
        weight_gradients[index] = activations[index].T @ gradient + l2 * weights[index]
        bias_gradients[index] = gradient.sum(axis=0)
        gradient = gradient @ weights[index].T
    return loss, weight_gradients, bias_gradients


def fit_ridge(features: np.ndarray, targets: np.ndarray, l2: float) -> Network:
    """
    Solves l2-regularized least squares in closed form, with an unpenalized intercept:
      [b, w] = (A^T A + l2 * diag(0, 1, ..., 1))^-1 A^T y with A = [1, X].
    :param features: a matrix of shape (N, D)
    :param targets: a vector of N targets
    :param l2: the regularization strength (positive, so the system is always solvable)
    :return: a single-layer Network
    """
    design: np.ndarray = np.hstack((np.ones((features.shape[0], 1)), features))
    penalty: np.ndarray = l2 * np.eye(design.shape[1])
    penalty[0, 0] = 0.0
    solution: np.ndarray = np.linalg.solve(design.T @ design + penalty, design.T @ targets)
    return Network(weights=(solution[1:, None].copy(),), biases=(solution[:1].copy(),))


def init_network(dims: tuple[int, ...], seed: SeedLike) -> Network:
    """
    Creates an untrained network with He-normal weights and zero biases.
    :param dims: the layer widths, input first and 1 last
    :param seed: a seed or a numpy Generator
    :return: a Network instance
    """
    rng: np.random.Generator = make_rng(seed)
    weights: tuple[np.ndarray, ...] = tuple(rng.normal(0.0, np.sqrt(2.0 / fan_in), size=(fan_in, fan_out))
                                            for fan_in, fan_out in zip(dims[:-1], dims[1:]))
    return Network(weights, tuple(np.zeros(fan_out) for fan_out in dims[1:]))


def fit_mlp(features: np.ndarray, targets: np.ndarray, config: TrainConfig) -> Network:
    """
    Trains a rectifier network with mini-batch Adam on standardized targets.
    Initialization (He-normal weights, zero biases) and shuffling are drawn from config.seed only.
    :param features: a matrix of shape (N, D)
    :param targets: a vector of N targets
    :param config: the training settings
    :return: the trained Network
    """
    rng: np.random.Generator = make_rng(config.seed)
    initial: Network = init_network((features.shape[1], *config.hidden_layers, 1), rng)
    weights: list[np.ndarray] = list(initial.weights)
    biases: list[np.ndarray] = list(initial.biases)

    shift: float = float(np.mean(targets))
    scale: float = float(np.std(targets)) or 1.0
    scaled_targets: np.ndarray = (targets - shift) / scale

    # Adam moments, one per parameter array
    parameters: list[np.ndarray] = [*weights, *biases]
    first_moments: list[np.ndarray] = [np.zeros_like(parameter) for parameter in parameters]
    second_moments: list[np.ndarray] = [np.zeros_like(parameter) for parameter in parameters]
    step: int = 0

    for epoch in range(config.epochs):
        order: np.ndarray = rng.permutation(len(targets))
        for start in range(0, len(targets), config.batch_size):
            batch: np.ndarray = order[start:start + config.batch_size]
            _, weight_gradients, bias_gradients = loss_and_gradients(weights, biases, features[batch],
                                                                     scaled_targets[batch], config.l2)
            step += 1
            for index, gradient in enumerate([*weight_gradients, *bias_gradients]):
                first_moments[index] = _ADAM_BETA1 * first_moments[index] + (1 - _ADAM_BETA1) * gradient
                second_moments[index] = _ADAM_BETA2 * second_moments[index] + (1 - _ADAM_BETA2) * gradient ** 2
                corrected_first: np.ndarray = first_moments[index] / (1 - _ADAM_BETA1 ** step)
                corrected_second: np.ndarray = second_moments[index] / (1 - _ADAM_BETA2 ** step)
                parameters[index] -= config.learning_rate * corrected_first / (np.sqrt(corrected_second)
                                                                               + _ADAM_EPSILON)
        if (epoch + 1) % 50 == 0:
            loss, _, _ = loss_and_gradients(weights, biases, features, scaled_targets, config.l2)
            logging.debug(f"Epoch {epoch + 1}/{config.epochs}: scaled training loss {loss:.6g}")

    return Network(tuple(weights), tuple(biases), target_shift=shift, target_scale=scale)


def grad_check(network: Network, features: np.ndarray, target: float, eps: float, l2: float = 0.0) -> float:
    """
    Compares backpropagated gradients with central finite differences on one sample.
    The relative error of each parameter is |analytic - numeric| / max(|analytic| + |numeric|, 1e-6).
    :param network: the network to check (its raw output is compared with target)
    :param features: one feature vector
    :param target: the sample's target in raw network units
    :param eps: the finite-difference step
    :param l2: the weight penalty included in the loss
    :return: the largest relative error over all parameters
    """
    weights: list[np.ndarray] = [weight.copy() for weight in network.weights]
    biases: list[np.ndarray] = [bias.copy() for bias in network.biases]
    batch: np.ndarray = features.reshape(1, -1)
    targets: np.ndarray = np.array([target], dtype=np.float64)

    _, weight_gradients, bias_gradients = loss_and_gradients(weights, biases, batch, targets, l2)
    worst: float = 0.0
    for parameter, analytic in zip([*weights, *biases], [*weight_gradients, *bias_gradients]):
        for index in np.ndindex(parameter.shape):
            original: float = float(parameter[index])
            parameter[index] = original + eps
            loss_plus: float = _loss(weights, biases, batch, targets, l2)
            parameter[index] = original - eps
            loss_minus: float = _loss(weights, biases, batch, targets, l2)
            parameter[index] = original

            numeric: float = (loss_plus - loss_minus) / (2 * eps)
            error: float = abs(float(analytic[index]) - numeric) / max(abs(float(analytic[index])) + abs(numeric),
                                                                       _GRAD_CHECK_FLOOR)
            worst = max(worst, error)
    return worst
