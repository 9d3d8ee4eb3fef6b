from __future__ import annotations

import logging
import math
from collections import deque

import numpy as np

from .config import EvolutionConfig
from .trace import Mutation, SearchResult, SearchTrace, TraceStep
from ..exceptions import SpecMismatchError
from ..oracle.base import Oracle
from ..seeding import make_rng
from ..space.architecture import ArchKey, Architecture
from ..space.operations import edit_distance, mean_edit_distance, random_architecture, random_neighbor
from ..space.spec import SearchSpaceSpec

_Evaluated = tuple[Architecture, float]


def _check_spaces(spec: SearchSpaceSpec, true_oracle: Oracle, optimum: Architecture | None) -> None:
    if true_oracle.spec != spec or (optimum is not None and optimum.spec != spec):
        raise SpecMismatchError("The oracle or the optimum belongs to a different search space.")


def _improves(candidate: _Evaluated, incumbent: _Evaluated | None) -> bool:
    # Higher score wins, ties go to the smallest ArchKey
    return incumbent is None or candidate[1] > incumbent[1] or (
            candidate[1] == incumbent[1] and candidate[0].key < incumbent[0].key)


def random_search(spec: SearchSpaceSpec, true_oracle: Oracle, budget: int, seed: int,
                  optimum: Architecture | None = None) -> SearchResult:
    """
    Scores budget uniformly drawn architectures (repeats allowed) and keeps the best.
    The trace has one row per evaluation; its edit distance is the incumbent's distance to the optimum.
    :param spec: the search space
    :param true_oracle: the oracle to maximize
    :param budget: the number of evaluations
    :param seed: the sampling seed
    :param optimum: the known best architecture, if any
    :return: the best architecture, its score and the trace
    :raises SpecMismatchError: if the oracle belongs to another space
    """
    if budget < 1:
        raise ValueError(f"budget must be at least 1, got {budget}.")
    _check_spaces(spec, true_oracle, optimum)

    rng: np.random.Generator = make_rng(seed)
    best: _Evaluated | None = None
    evaluations: list[tuple[ArchKey, float]] = []
    steps: list[TraceStep] = []
    for evaluation in range(1, budget + 1):
        architecture: Architecture = random_architecture(spec, rng)
        candidate: _Evaluated = architecture, true_oracle.score(architecture)
        evaluations.append((architecture.key, candidate[1]))
        if _improves(candidate, best):
            best = candidate
        assert best is not None
        steps.append(TraceStep(evaluation, evaluation, 0, best[1],
                               edit_distance(best[0], optimum) if optimum is not None else math.nan))

    assert best is not None
    return SearchResult(best[0], best[1], SearchTrace(tuple(steps)), tuple(evaluations))


def regularized_evolution(spec: SearchSpaceSpec, true_oracle: Oracle, config: EvolutionConfig, seed: int,
                          optimum: Architecture | None = None) -> SearchResult:
    """
    Aging evolution: a random population is evaluated, then every cycle the best member of a random tournament
      (drawn without replacement) is mutated by one uniform edit, the child is evaluated and appended, and the
      oldest member is removed.
    The trace has one row per evaluation; its edit distance is the population's mean distance to the optimum.
    :param spec: the search space
    :param true_oracle: the oracle to maximize
    :param config: the population, tournament and cycle settings
    :param seed: the search seed
    :param optimum: the known best architecture, if any
    :return: the best architecture ever evaluated, its score, the trace and the lineage of every child
    :raises SpecMismatchError: if the oracle belongs to another space
    """
    _check_spaces(spec, true_oracle, optimum)

    rng: np.random.Generator = make_rng(seed)
    population: deque[_Evaluated] = deque()
    best: _Evaluated | None = None
    evaluations: list[tuple[ArchKey, float]] = []
    mutations: list[Mutation] = []
    steps: list[TraceStep] = []

    def _evaluate(architecture: Architecture) -> None:
        nonlocal best
        candidate: _Evaluated = architecture, true_oracle.score(architecture)
        evaluations.append((architecture.key, candidate[1]))
        population.append(candidate)
        if _improves(candidate, best):
            best = candidate

    def _record() -> None:
        assert best is not None
        distance: float = mean_edit_distance([member for member, _ in population], optimum) \
            if optimum is not None else math.nan
        steps.append(TraceStep(len(evaluations), len(evaluations), 0, best[1], distance))

    # Warm-up
    for _ in range(config.population_size):
        _evaluate(random_architecture(spec, rng))
        _record()

    for _ in range(config.cycles - config.population_size):
        tournament: np.ndarray = rng.choice(len(population), size=config.tournament_size, replace=False)
        parent: _Evaluated = population[int(tournament[0])]
        for index in tournament[1:]:
            if _improves(population[int(index)], parent):
                parent = population[int(index)]

        child: Architecture = random_neighbor(parent[0], 1, rng)
        mutations.append(Mutation(parent[0].key, child.key))
        _evaluate(child)
        population.popleft()
        _record()

    assert best is not None
    logging.debug(f"Regularized evolution finished after {len(evaluations)} evaluations, best {best[1]:.6f}")
    return SearchResult(best[0], best[1], SearchTrace(tuple(steps)), tuple(evaluations), tuple(mutations))
