from dataclasses import dataclass, field
from enum import StrEnum

from ..constants import DEFAULT_BATCH_SIZE, DEFAULT_EPOCHS, DEFAULT_HIDDEN_LAYERS, DEFAULT_L2, DEFAULT_LEARNING_RATE


class Backend(StrEnum):
    # Closed-form l2-regularized least squares
    RIDGE = "ridge"
    # Rectifier network trained with mini-batch gradient descent
    MLP = "mlp"


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = DEFAULT_EPOCHS
    batch_size: int = DEFAULT_BATCH_SIZE
    learning_rate: float = DEFAULT_LEARNING_RATE
    l2: float = DEFAULT_L2
    seed: int = 0
    hidden_layers: tuple[int, ...] = field(default=DEFAULT_HIDDEN_LAYERS)
    loss: str = "mse"

    def __post_init__(self) -> None:
        object.__setattr__(self, "hidden_layers", tuple(self.hidden_layers))
        if min(self.epochs, self.batch_size) < 1 or self.learning_rate <= 0 or self.l2 <= 0 or self.seed < 0:
            raise ValueError(f"Training settings must be positive: {self}.")
        if any(width < 1 for width in self.hidden_layers):
            raise ValueError(f"Hidden layer widths must be positive, got {self.hidden_layers}.")
        if self.loss != "mse":
            raise ValueError(f"Only the mean-squared-error loss is supported, got {self.loss!r}.")
