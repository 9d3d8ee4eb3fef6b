from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .config import Convergence, NeighborBudget, SearchConfig
from .trace import SearchResult, SearchTrace, TraceStep
from ..exceptions import SpecMismatchError
from ..oracle.base import CountingOracle, Oracle
from ..predictor.model import DeltaPredictor
from ..seeding import make_rng
from ..space.architecture import ArchKey, Architecture
from ..space.operations import mean_edit_distance, neighbors_k, random_architecture
from ..space.spec import SearchSpaceSpec

# make_rng key reserved for restart draws, next to the neighbor-sampling keys (iteration, member)
_RESTART_KEY: int = 1


@dataclass(frozen=True)
class TrueDeltaPredictor:
    """
    A predictor that returns the oracle's exact deltas; an upper bound for any learned predictor.
    It reads the true oracle, so every read is counted and charged to the search's oracle queries.
    """
    oracle: Oracle
    _counter: CountingOracle = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_counter", CountingOracle(self.oracle))

    @property
    def oracle_queries(self) -> int:
        return self._counter.queries

    def predict_deltas(self, anchor: Architecture, neighbors: Sequence[Architecture]) -> np.ndarray:
        anchor_score: float = self._counter.score(anchor)
        return np.array([self._counter.score(neighbor) - anchor_score for neighbor in neighbors], dtype=np.float64)


def _oracle_reads(model: DeltaPredictor) -> int:
    return model.oracle_queries if isinstance(model, TrueDeltaPredictor) else 0


@dataclass(frozen=True)
class _Move:
    architecture: Architecture
    predicted_gain: float
    predictor_queries: int


def _candidate_neighbors(member: Architecture, config: SearchConfig, iteration: int,
                         member_index: int) -> list[Architecture]:
    neighbors: list[Architecture] = list(neighbors_k(member, 1))
    if config.neighbor_budget is NeighborBudget.SAMPLE and config.neighbor_samples < len(neighbors):
        # Keep the sampled neighbors in their enumeration order so the argmax stays deterministic
        chosen: np.ndarray = np.sort(make_rng(config.seed, iteration, member_index)
                                     .choice(len(neighbors), size=config.neighbor_samples, replace=False))
        neighbors = [neighbors[index] for index in chosen]
    return neighbors


def _best_move(model: DeltaPredictor, member: Architecture, config: SearchConfig, iteration: int,
               member_index: int) -> _Move:
    """Moves a member to its best predicted neighbor when that neighbor is predicted to improve on it."""
    neighbors: list[Architecture] = _candidate_neighbors(member, config, iteration, member_index)
    deltas: np.ndarray = model.predict_deltas(member, neighbors)
    # argmax returns the first maximum, i.e. the earliest neighbor in enumeration order
    best: int = int(np.argmax(deltas))
    if deltas[best] > 0:
        return _Move(neighbors[best], float(deltas[best]), len(neighbors))
    return _Move(member, 0.0, len(neighbors))


def _distance(population: Sequence[Architecture], optimum: Architecture | None) -> float:
    return mean_edit_distance(population, optimum) if optimum is not None else math.nan


def _refine(true_oracle: Oracle, start: Architecture, scored: dict[ArchKey, tuple[Architecture, float]],
            budget: int | None) -> Iterator[int]:
    """
    Climbs from start with the true oracle: every round scores the unscored single-edit neighbors of the current
      architecture and moves to the best of them while it improves. Scores are added to scored in enumeration
      order; each round yields the number of architectures scored so far.
    """
    current: Architecture = start
    while budget is None or len(scored) < budget:
        for neighbor in neighbors_k(current, 1):
            if neighbor.key not in scored and (budget is None or len(scored) < budget):
                scored[neighbor.key] = neighbor, true_oracle.score(neighbor)
        yield len(scored)
        best: tuple[Architecture, float] = _best_scored(scored[neighbor.key] for neighbor in neighbors_k(current, 1)
                                                        if neighbor.key in scored)
        if best[1] <= scored[current.key][1]:
            return
        current = best[0]


def _best_scored(scored: Iterable[tuple[Architecture, float]]) -> tuple[Architecture, float]:
    # Ties go to the smallest ArchKey
    return min(scored, key=lambda item: (-item[1], item[0].key))


def delta_nas_search(spec: SearchSpaceSpec, model: DeltaPredictor, true_oracle: Oracle, config: SearchConfig,
                     optimum: Architecture | None = None) -> SearchResult:
    """
    Delta-NAS: every population member repeatedly moves to the single-edit neighbor with the largest positive
      predicted delta, until no member moves or the iteration cap is reached. Only the final distinct
      architectures are scored by the true oracle. With config.refine the best of them is then climbed with the
      true oracle (see _refine).
    The oracle_queries column counts every true evaluation, the reads of a TrueDeltaPredictor included.
    :param spec: the search space
    :param model: the delta predictor
    :param true_oracle: the oracle the final architectures are scored with
    :param config: the search settings
    :param optimum: the known best architecture, used for the edit-distance column of the trace
    :return: the best evaluated architecture (ties go to the smallest ArchKey), its score and the trace
    :raises SpecMismatchError: if the oracle belongs to another space
    """
    if true_oracle.spec != spec or (optimum is not None and optimum.spec != spec):
        raise SpecMismatchError("The oracle or the optimum belongs to a different search space.")

    population: list[Architecture] = [random_architecture(spec, make_rng(config.seed, 0, index))
                                      for index in range(config.population_size)]
    gains: list[float] = [0.0] * config.population_size
    # Members replaced by restarts, with their accumulated predicted gain
    archive: list[tuple[Architecture, float]] = []
    predictor_queries: int = 0
    initial_reads: int = _oracle_reads(model)
    steps: list[TraceStep] = [TraceStep(0, 0, 0, -math.inf, _distance(population, optimum))]

    executor: ThreadPoolExecutor | None = ThreadPoolExecutor(max_workers=config.workers) \
        if config.workers > 1 else None
    try:
        for iteration in range(1, config.max_iterations + 1):
            def _step(member_index: int) -> _Move:
                return _best_move(model, population[member_index], config, iteration, member_index)

            indices: range = range(config.population_size)
            moves: list[_Move] = list(executor.map(_step, indices)) if executor is not None \
                else [_step(member_index) for member_index in indices]

            moved: int = 0
            stagnant: list[int] = []
            for member_index, move in enumerate(moves):
                predictor_queries += move.predictor_queries
                if move.architecture != population[member_index]:
                    moved += 1
                    population[member_index] = move.architecture
                    gains[member_index] += move.predicted_gain
                else:
                    stagnant.append(member_index)

            converged: bool = config.convergence is Convergence.NO_MEMBER_IMPROVED and moved == 0
            if config.restarts and not converged:
                for member_index in stagnant:
                    archive.append((population[member_index], gains[member_index]))
                    population[member_index] = random_architecture(
                        spec, make_rng(config.seed, iteration, member_index, _RESTART_KEY))
                    gains[member_index] = 0.0

            steps.append(TraceStep(iteration, _oracle_reads(model) - initial_reads, predictor_queries, -math.inf,
                                   _distance(population, optimum)))
            logging.debug(f"Iteration {iteration}: {moved}/{config.population_size} member(s) moved")
            if converged:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    reads: int = _oracle_reads(model) - initial_reads

    # Final evaluation of the distinct architectures, best accumulated gain first when the budget binds
    best_gain: dict[ArchKey, tuple[Architecture, float]] = {}
    for architecture, gain in [*zip(population, gains), *archive]:
        if architecture.key not in best_gain or gain > best_gain[architecture.key][1]:
            best_gain[architecture.key] = architecture, gain
    finalists: list[tuple[Architecture, float]] = sorted(best_gain.values(), key=lambda item: (-item[1], item[0].key))
    if config.final_eval_budget is not None:
        finalists = finalists[:config.final_eval_budget]
    finalists.sort(key=lambda item: item[0].key)

    scored: dict[ArchKey, tuple[Architecture, float]] = {}
    for architecture, _ in finalists:
        scored[architecture.key] = architecture, true_oracle.score(architecture)

    final_iteration: int = steps[-1].iteration + 1
    steps.append(TraceStep(final_iteration, reads + len(scored), predictor_queries, _best_scored(scored.values())[1],
                           _distance(population, optimum)))
    if config.refine:
        rounds: int = 0
        for rounds, count in enumerate(_refine(true_oracle, _best_scored(scored.values())[0], scored,
                                               config.final_eval_budget), start=1):
            steps.append(TraceStep(final_iteration + rounds, reads + count, predictor_queries,
                                   _best_scored(scored.values())[1], _distance(population, optimum)))
        logging.debug(f"Refinement scored {len(scored) - len(finalists)} neighbor(s) in {rounds} round(s)")

    best: tuple[Architecture, float] = _best_scored(scored.values())
    evaluations: tuple[tuple[ArchKey, float], ...] = tuple((key, value) for key, (_, value) in scored.items())
    return SearchResult(best[0], best[1], SearchTrace(tuple(steps)), evaluations)
