from dataclasses import dataclass
from enum import StrEnum

from ..constants import DEFAULT_MAX_ITERATIONS, DEFAULT_POPULATION_SIZE, DEFAULT_TOURNAMENT_SIZE


class NeighborBudget(StrEnum):
    # Every single-edit neighbor of a member is scored by the predictor
    ALL = "all"
    # A seeded subset of neighbor_samples neighbors is scored
    SAMPLE = "sample"


class Convergence(StrEnum):
    # Stop at the first iteration in which no member moved (or at the iteration cap)
    NO_MEMBER_IMPROVED = "no_member_improved"
    # Always run max_iterations iterations
    ITERATION_CAP = "iteration_cap"


@dataclass(frozen=True)
class SearchConfig:
    """
    Delta-NAS settings.
    final_eval_budget caps the number of distinct final architectures scored by the true oracle (None scores all of
      them); when it binds, the architectures with the largest accumulated predicted gain are kept.
    refine climbs from the best final architecture with the true oracle, moving to its best single-edit neighbor
      while that improves; its evaluations count against final_eval_budget too.
    """
    population_size: int = DEFAULT_POPULATION_SIZE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    neighbor_budget: NeighborBudget = NeighborBudget.ALL
    neighbor_samples: int = 8
    convergence: Convergence = Convergence.NO_MEMBER_IMPROVED
    final_eval_budget: int | None = None
    restarts: bool = False
    refine: bool = False
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError(f"population_size must be at least 1, got {self.population_size}.")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be at least 1, got {self.max_iterations}.")
        if self.neighbor_samples < 1:
            raise ValueError(f"neighbor_samples must be at least 1, got {self.neighbor_samples}.")
        if self.final_eval_budget is not None and self.final_eval_budget < 1:
            raise ValueError(f"final_eval_budget must be at least 1, got {self.final_eval_budget}.")
        if self.seed < 0 or self.workers < 1:
            raise ValueError("seed must be non-negative and workers positive.")


@dataclass(frozen=True)
class EvolutionConfig:
    """Regularized (aging) evolution settings; cycles counts every true evaluation, the warm-up included."""
    cycles: int
    population_size: int = DEFAULT_POPULATION_SIZE
    tournament_size: int = DEFAULT_TOURNAMENT_SIZE

    def __post_init__(self) -> None:
        if self.population_size < 1:
            raise ValueError(f"population_size must be at least 1, got {self.population_size}.")
        if not 1 <= self.tournament_size <= self.population_size:
            raise ValueError(f"tournament_size must lie in [1, {self.population_size}], got {self.tournament_size}.")
        if self.cycles < self.population_size:
            raise ValueError(f"cycles ({self.cycles}) must be at least population_size ({self.population_size}).")
