from typing import Sequence

import numpy as np
from scipy.stats import kendalltau

from ..exceptions import LengthMismatchError, UndefinedCorrelationError


def kendall_tau(predicted: Sequence[float] | np.ndarray, truth: Sequence[float] | np.ndarray) -> float:
    """
    Kendall's tau-b (tie-corrected) rank correlation.
    :param predicted: the predicted values
    :param truth: the true values, in the same order
    :return: a correlation in [-1, 1]
    :raises LengthMismatchError: if the sequences differ in length
    :raises UndefinedCorrelationError: if there are fewer than two values or either sequence is constant
    """
    predicted_values: np.ndarray = np.asarray(predicted, dtype=np.float64)
    true_values: np.ndarray = np.asarray(truth, dtype=np.float64)
    if predicted_values.shape != true_values.shape:
        raise LengthMismatchError(f"Can't correlate {predicted_values.size} predictions with "
                                  f"{true_values.size} true values.")
    if predicted_values.size < 2:
        raise UndefinedCorrelationError("Kendall's tau needs at least two values.")
    if np.all(predicted_values == predicted_values[0]) or np.all(true_values == true_values[0]):
        raise UndefinedCorrelationError("Kendall's tau is undefined for a constant sequence.")

    tau, _ = kendalltau(predicted_values, true_values, variant="b")
    return float(tau)


def mean_squared_error(predicted: np.ndarray, truth: np.ndarray) -> float:
    """
    The mean squared error between two vectors.
    :raises LengthMismatchError: if the vectors differ in length
    """
    if predicted.shape != truth.shape:
        raise LengthMismatchError(f"Shapes {predicted.shape} and {truth.shape} differ.")
    return float(np.mean((predicted - truth) ** 2))
