from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .trace import TRACE_COLUMNS, SearchResult, SearchTrace, format_value
from ..constants import DEFAULT_ENUMERATION_LIMIT, DEFAULT_EPSILON
from ..oracle.base import Oracle, best_in_space
from ..records.provenance import ConfigStamp
from ..space.spec import SearchSpaceSpec

# Runs one search: (seed, budget) -> result
SearchRunner = Callable[[int, int], SearchResult]

SUMMARY_COLUMNS: tuple[str, ...] = ("method", "runs", "reached", "best_score_median", "best_score_iqr",
                                    "queries_to_epsilon_median", "queries_to_epsilon_iqr")


@dataclass(frozen=True)
class MethodSummary:
    method: str
    runs: int
    # Runs that came within epsilon of the optimum
    reached: int
    best_score_median: float
    best_score_iqr: float
    queries_to_epsilon_median: float
    queries_to_epsilon_iqr: float


@dataclass(frozen=True)
class Comparison:
    optimum_score: float
    summaries: tuple[MethodSummary, ...]
    # (method, seed) -> trace, in (method, seed) order
    traces: dict[tuple[str, int], SearchTrace]


def queries_to_epsilon(trace: SearchTrace, optimum_score: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """
    The number of oracle queries after which the best score first came within a relative epsilon of the optimum.
    :param trace: a search trace
    :param optimum_score: the best score in the space
    :param epsilon: the relative tolerance
    :return: the query count, or inf if the optimum was never approached
    """
    threshold: float = optimum_score - epsilon * abs(optimum_score)
    for step in trace.steps:
        if step.best_score >= threshold:
            return float(step.oracle_queries)
    return math.inf


def _median_iqr(values: Sequence[float]) -> tuple[float, float]:
    array: np.ndarray = np.asarray(values, dtype=np.float64)
    # Linear interpolation between infinite values yields nan, so unreached runs use the nearest rank
    method: str = "linear" if np.all(np.isfinite(array)) else "nearest"
    lower, upper = np.percentile(array, (25, 75), method=method)
    with np.errstate(invalid="ignore"):
        return float(np.median(array)), float(upper - lower)


def compare_searchers(spec: SearchSpaceSpec, oracle: Oracle, methods: Mapping[str, SearchRunner],
                      seeds: Sequence[int], budget: int, epsilon: float = DEFAULT_EPSILON,
                      limit: int = DEFAULT_ENUMERATION_LIMIT, workers: int = 1,
                      optimum_score: float | None = None) -> Comparison:
    """
    Runs every method with every seed and summarizes the runs per method.
    :param spec: the search space
    :param oracle: the true oracle, used to find the optimum
    :param methods: the searchers by name
    :param seeds: the seeds every method is run with
    :param budget: the budget handed to every run
    :param epsilon: the relative gap to the optimum that counts as reached
    :param limit: the largest space that may be enumerated to find the optimum
    :param workers: the number of runs executed concurrently; results don't depend on it
    :param optimum_score: the known optimum, skipping the exhaustive scan
    :return: the per-method summaries (median and interquartile range) and every trace
    :raises SpaceTooLargeError: if the optimum has to be found and the space is too large
    """
    if not methods or not seeds:
        raise ValueError("At least one method and one seed are needed.")
    if optimum_score is None:
        _, optimum_score = best_in_space(oracle, spec, limit)

    jobs: list[tuple[str, int]] = [(method, seed) for method in methods for seed in seeds]

    def _run(job: tuple[str, int]) -> SearchResult:
        return methods[job[0]](job[1], budget)

    results: list[SearchResult]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run, jobs))
    else:
        results = [_run(job) for job in jobs]
    by_job: dict[tuple[str, int], SearchResult] = dict(zip(jobs, results))

    summaries: list[MethodSummary] = []
    for method in methods:
        runs: list[SearchResult] = [by_job[method, seed] for seed in seeds]
        queries: list[float] = [queries_to_epsilon(run.trace, optimum_score, epsilon) for run in runs]
        summaries.append(MethodSummary(method, len(runs), sum(math.isfinite(value) for value in queries),
                                       *_median_iqr([run.best_score for run in runs]), *_median_iqr(queries)))
    return Comparison(optimum_score, tuple(summaries), {job: result.trace for job, result in by_job.items()})


def write_comparison(comparison: Comparison, summary_path: Path, traces_path: Path,
                     config_hash: str | None = None) -> None:
    """
    Writes the summary table and the aligned traces (one row per method, seed and step) as CSV files.
    """
    stamp: list[str] = [ConfigStamp(config_hash).serialize() + "\n"] if config_hash is not None else []
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    with open(summary_path, mode="w", encoding="utf-8", newline="") as file:
        file.writelines(stamp)
        file.write(f"# optimum={comparison.optimum_score!r}\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(SUMMARY_COLUMNS)
        writer.writerows([format_value(value) for value in astuple(summary)] for summary in comparison.summaries)

    traces_path.parent.mkdir(parents=True, exist_ok=True)
    with open(traces_path, mode="w", encoding="utf-8", newline="") as file:
        file.writelines(stamp)
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(("method", "seed", *TRACE_COLUMNS))
        for (method, seed), trace in comparison.traces.items():
            writer.writerows([method, seed, *(format_value(value) for value in astuple(step))]
                             for step in trace.steps)
