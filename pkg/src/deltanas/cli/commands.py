from __future__ import annotations

import csv
import logging
import statistics
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .experiment import ExperimentConfig, OracleType, SearchMethod, canonical_json, to_plain
from ..constants import COMPARE_SUMMARY_FILE_NAME, COMPARE_TRACES_FILE_NAME, DATASET_FILE_NAME, ENCODINGS_FILE_NAME, \
    MODEL_FILE_NAME, REGISTRY_FILE_NAME, SEARCH_TRACE_FILE_NAME, SWEEP_FILE_NAME
from ..database.client import Client as DatabaseClient
from ..database.queries import ArtifactEntry, file_digest, find_artifact, register_artifact
from ..dataset.doa import DoADataset, aggregate_by_encoding, generate_doa_dataset
from ..dataset.files import load_dataset, save_dataset
from ..encoding.cardinality import dk_size_exact, dk_size_paper
from ..exceptions import ArtifactExistsError, ConfigError, MissingArtifactError, SpaceTooLargeError
from ..formats import format_count, format_score, format_tau
from ..oracle.base import CountingOracle, Oracle, best_in_space
from ..oracle.proxy import NoisyProxy
from ..oracle.synthetic import SyntheticLandscape
from ..oracle.tabular import load_tabular
from ..predictor.experiments import EncodingRow, SweepRow, compare_encodings, loss_vs_edit_distance
from ..predictor.files import load_model, save_model
from ..predictor.model import DeltaPredictor, PredictorModel, train
from ..records.provenance import ConfigStamp
from ..search.baselines import random_search, regularized_evolution
from ..search.compare import Comparison, SearchRunner, compare_searchers, write_comparison
from ..search.config import EvolutionConfig
from ..search.delta_nas import TrueDeltaPredictor, delta_nas_search
from ..search.trace import SearchResult, format_value, write_trace_csv
from ..space.architecture import Architecture
from ..space.operations import space_size_exact, space_size_paper
from ..space.spec import SearchSpaceSpec, SpaceKind

# The configuration sections each command depends on; artifacts are stamped with the hash of these sections
DATASET_SECTIONS: tuple[str, ...] = ("space", "oracle", "dataset")
MODEL_SECTIONS: tuple[str, ...] = (*DATASET_SECTIONS, "predictor")
SEARCH_SECTIONS: tuple[str, ...] = (*MODEL_SECTIONS, "search")
COMPARE_SECTIONS: tuple[str, ...] = (*SEARCH_SECTIONS, "compare")
SWEEP_SECTIONS: tuple[str, ...] = (*MODEL_SECTIONS, "sweep")
ENCODINGS_SECTIONS: tuple[str, ...] = (*MODEL_SECTIONS, "encodings")


@dataclass(frozen=True)
class Experiment:
    """An experiment configuration with its search space and oracles built."""
    config: ExperimentConfig
    spec: SearchSpaceSpec
    oracle: Oracle
    proxy: NoisyProxy

    @classmethod
    def build(cls, config: ExperimentConfig) -> Experiment:
        """
        :raises ConfigError: if a tabular oracle has no path or describes another space
        :raises ParserError: from load_tabular
        """
        spec: SearchSpaceSpec = config.space.to_spec()
        oracle: Oracle
        match config.oracle.type:
            case OracleType.SYNTHETIC:
                oracle = SyntheticLandscape(spec, config.oracle.seed, config.oracle.pair_weight)
            case OracleType.TABULAR:
                if config.oracle.path is None:
                    raise ConfigError("oracle.path is required for tabular oracles.")
                oracle = load_tabular(config.oracle.path)
                if oracle.spec != spec:
                    raise ConfigError(f"The benchmark describes a {oracle.spec.describe()}, "
                                      f"the configuration a {spec.describe()}.")
        return cls(config, spec, oracle, NoisyProxy(oracle, config.oracle.sigma, config.oracle.proxy_seed))

    def path(self, file_name: str) -> Path:
        return self.config.output_dir / file_name

    def database(self) -> DatabaseClient:
        return DatabaseClient(file_path=self.path(REGISTRY_FILE_NAME))

    def known_optimum(self) -> tuple[Architecture, float] | None:
        """The best architecture of the space, or None when the space is too large to enumerate."""
        try:
            return best_in_space(self.oracle, self.spec, self.config.oracle.limit)
        except SpaceTooLargeError:
            logging.warning("The search space is too large to find its optimum; distances won't be reported.")
            return None


def check_overwrite(path: Path, force: bool) -> None:
    """
    :raises ArtifactExistsError: if the file exists and force isn't set
    """
    if path.exists() and not force:
        raise ArtifactExistsError(f"{path} already exists, rerun with --force to overwrite it.")


def require_artifact(database: DatabaseClient, command: str, config_hash: str) -> Path:
    """
    Finds the artifact a prerequisite command produced for the same configuration.
    :param database: the output directory's registry
    :param command: the prerequisite command
    :param config_hash: the hash of the configuration sections the prerequisite depends on
    :return: the artifact's path
    :raises MissingArtifactError: if the prerequisite hasn't been run (or its file is gone)
    """
    entry: ArtifactEntry | None = find_artifact(database, command, config_hash)
    if entry is None or not entry.path.exists():
        raise MissingArtifactError(f"No {command} artifact matches this configuration, "
                                   f"run `delta-nas {command}` first.")
    if file_digest(entry.path) != entry.digest:
        logging.warning(f"{entry.path} changed since `delta-nas {command}` wrote it.")
    return entry.path


def write_csv(path: Path, config_hash: str, columns: Sequence[str],
              rows: Iterable[Sequence[int | float | str]]) -> None:
    """Writes a stamped CSV table."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, mode="w", encoding="utf-8", newline="") as file:
        file.write(ConfigStamp(config_hash).serialize() + "\n")
        writer = csv.writer(file, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows([value if isinstance(value, str) else format_value(value) for value in row] for row in rows)


def cmd_size(kind: SpaceKind, n: int, r: int, ks: Sequence[int], limit: int) -> None:
    """
    Reports the size of a search space and of its difference spaces.
    :raises InvalidSpecError: if the space is invalid
    :raises InvalidKError: if a k is out of range
    """
    spec: SearchSpaceSpec = SearchSpaceSpec(kind, n, r)
    logging.info(f"{spec.describe()}:")
    logging.info(f"  |A| (closed form): {format_count(space_size_paper(spec))}")
    logging.info(f"  |A| (exact):       {format_count(space_size_exact(spec))}")
    for k in ks:
        logging.info(f"  |D^{k}| (position + new value): {format_count(dk_size_paper(spec, k))}")
        logging.info(f"  |D^{k}| (signed differences):   {format_count(dk_size_exact(spec, k, limit))}")


def cmd_gen_dataset(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    path: Path = experiment.path(DATASET_FILE_NAME)
    check_overwrite(path, force)

    dataset: DoADataset = generate_doa_dataset(experiment.spec, experiment.proxy, config.dataset.num_anchors,
                                               config.dataset.k, config.dataset.samples_per_encoding,
                                               config.dataset.seed, config.dataset.symmetrize,
                                               config.dataset.workers, config.dataset.all_neighbors)
    config_hash: str = config.section_hash(*DATASET_SECTIONS)
    save_dataset(dataset, path, config_hash)

    database: DatabaseClient
    with experiment.database() as database:
        register_artifact(database, "gen-dataset", config_hash, path)

    encodings: int = len(aggregate_by_encoding(dataset))
    logging.info(f"Wrote {format_count(len(dataset))} samples to {path}.")
    if encodings:
        logging.info(f"  {format_count(encodings)} distinct difference encodings, "
                     f"{len(dataset) / encodings:.2f} samples per encoding on average.")


def cmd_train(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    path: Path = experiment.path(MODEL_FILE_NAME)
    check_overwrite(path, force)

    database: DatabaseClient
    with experiment.database() as database:
        dataset_path: Path = require_artifact(database, "gen-dataset", config.section_hash(*DATASET_SECTIONS))
        dataset: DoADataset = aggregate_by_encoding(load_dataset(dataset_path), config.predictor.mode)
        model: PredictorModel = train(dataset, config.predictor.training, config.predictor.mode,
                                      config.predictor.backend)

        config_hash: str = config.section_hash(*MODEL_SECTIONS)
        save_model(model, path, config_hash)
        register_artifact(database, "train", config_hash, path)
    logging.info(f"Trained a {model.backend} predictor on {format_count(len(dataset))} aggregated samples, "
                 f"training MSE {model.train_loss:.6g}; saved to {path}.")


def _load_model(experiment: Experiment, database: DatabaseClient) -> PredictorModel:
    return load_model(require_artifact(database, "train", experiment.config.section_hash(*MODEL_SECTIONS)))


def cmd_search(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    path: Path = experiment.path(SEARCH_TRACE_FILE_NAME)
    check_overwrite(path, force)

    database: DatabaseClient
    with experiment.database() as database:
        model: PredictorModel = _load_model(experiment, database)
        optimum: tuple[Architecture, float] | None = experiment.known_optimum()
        oracle: CountingOracle = CountingOracle(experiment.oracle)
        result: SearchResult = delta_nas_search(experiment.spec, model, oracle, config.search,
                                                optimum[0] if optimum is not None else None)

        config_hash: str = config.section_hash(*SEARCH_SECTIONS)
        write_trace_csv(result.trace, path, config_hash, canonical_json(to_plain(config)))
        register_artifact(database, "search", config_hash, path)

    logging.info(f"Best architecture {result.best} scored "
                 f"{format_score(result.best_score, optimum[1] if optimum is not None else None)}.")
    logging.info(f"  {format_count(oracle.queries)} oracle queries, "
                 f"{format_count(result.trace.final.predictor_queries)} predictor queries; trace saved to {path}.")


def _runners(experiment: Experiment, model: PredictorModel | None,
             optimum: Architecture) -> dict[str, SearchRunner]:
    config: ExperimentConfig = experiment.config
    spec: SearchSpaceSpec = experiment.spec
    oracle: Oracle = experiment.oracle

    def _delta_nas(predictor: Callable[[], DeltaPredictor]) -> SearchRunner:
        # The budget caps the true evaluations after the search; a fresh predictor per run keeps its reads apart
        return lambda seed, budget: delta_nas_search(
            spec, predictor(), oracle, replace(config.search, seed=seed, final_eval_budget=budget), optimum)

    def _evolution(seed: int, budget: int) -> SearchResult:
        population_size: int = min(config.compare.evolution_population, budget)
        evolution: EvolutionConfig = EvolutionConfig(budget, population_size,
                                                     min(config.compare.tournament_size, population_size))
        return regularized_evolution(spec, oracle, evolution, seed, optimum)

    runners: dict[str, SearchRunner] = {}
    for method in config.compare.methods:
        match method:
            case SearchMethod.DELTA_NAS:
                assert model is not None
                trained: PredictorModel = model
                runners[method] = _delta_nas(lambda: trained)
            case SearchMethod.TRUE_DELTA:
                runners[method] = _delta_nas(lambda: TrueDeltaPredictor(oracle))
            case SearchMethod.RANDOM:
                runners[method] = lambda seed, budget: random_search(spec, oracle, budget, seed, optimum)
            case SearchMethod.EVOLUTION:
                runners[method] = _evolution
    return runners


def cmd_compare(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    summary_path: Path = experiment.path(COMPARE_SUMMARY_FILE_NAME)
    traces_path: Path = experiment.path(COMPARE_TRACES_FILE_NAME)
    check_overwrite(summary_path, force)
    check_overwrite(traces_path, force)
    if not config.compare.methods:
        raise ConfigError("compare.methods lists no method.")

    database: DatabaseClient
    with experiment.database() as database:
        model: PredictorModel | None = _load_model(experiment, database) \
            if SearchMethod.DELTA_NAS in config.compare.methods else None
        optimum_architecture, optimum_score = best_in_space(experiment.oracle, experiment.spec,
                                                            config.oracle.limit)
        comparison: Comparison = compare_searchers(experiment.spec, experiment.oracle,
                                                   _runners(experiment, model, optimum_architecture),
                                                   config.compare.seeds, config.compare.budget,
                                                   config.compare.epsilon, config.oracle.limit,
                                                   config.compare.workers, optimum_score)

        config_hash: str = config.section_hash(*COMPARE_SECTIONS)
        write_comparison(comparison, summary_path, traces_path, config_hash)
        register_artifact(database, "compare", config_hash, summary_path)

    logging.info(f"Optimum {optimum_architecture} scores {format_score(optimum_score)}.")
    for summary in comparison.summaries:
        logging.info(f"  {summary.method}: median best {format_score(summary.best_score_median, optimum_score)}, "
                     f"reached {summary.reached}/{summary.runs}, "
                     f"median queries to epsilon {summary.queries_to_epsilon_median:g}")
    logging.info(f"Saved {summary_path} and {traces_path}.")


def cmd_sweep_k(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    path: Path = experiment.path(SWEEP_FILE_NAME)
    check_overwrite(path, force)

    rows: list[SweepRow] = loss_vs_edit_distance(experiment.spec, experiment.proxy, config.sweep.ks,
                                                 config.sweep.per_k_budget, config.predictor.training,
                                                 config.sweep.seed, config.predictor.backend,
                                                 config.predictor.mode, config.dataset.samples_per_encoding,
                                                 config.sweep.train_fraction)
    config_hash: str = config.section_hash(*SWEEP_SECTIONS)
    write_csv(path, config_hash, ("k", "test_mse", "test_tau", "train_size", "test_size"),
              [(row.k, row.test_mse, row.test_tau, row.train_size, row.test_size) for row in rows])

    database: DatabaseClient
    with experiment.database() as database:
        register_artifact(database, "sweep-k", config_hash, path)
    for row in rows:
        logging.info(f"  k={row.k}: test MSE {row.test_mse:.6g}, tau {format_tau(row.test_tau)}")
    logging.info(f"Saved {path}.")


def cmd_compare_encodings(config: ExperimentConfig, force: bool) -> None:
    experiment: Experiment = Experiment.build(config)
    path: Path = experiment.path(ENCODINGS_FILE_NAME)
    check_overwrite(path, force)

    rows: list[EncodingRow] = compare_encodings(experiment.spec, experiment.proxy, experiment.oracle,
                                                config.encodings.train_fractions, config.encodings.seeds,
                                                config.predictor.training, config.predictor.backend,
                                                config.dataset.samples_per_encoding,
                                                config.encodings.eval_anchors, config.oracle.limit,
                                                config.encodings.mode)
    config_hash: str = config.section_hash(*ENCODINGS_SECTIONS)
    write_csv(path, config_hash, ("train_fraction", "seed", "budget", "doa_tau", "adj_tau"),
              [(row.train_fraction, row.seed, row.budget, row.doa_tau, row.adj_tau) for row in rows])

    database: DatabaseClient
    with experiment.database() as database:
        register_artifact(database, "compare-encodings", config_hash, path)
    for train_fraction in config.encodings.train_fractions:
        selected: list[EncodingRow] = [row for row in rows if row.train_fraction == train_fraction]
        if not selected:
            continue
        logging.info(f"  {train_fraction:.1%} of the space: "
                     f"median DoA tau {format_tau(statistics.median(row.doa_tau for row in selected))}, "
                     f"median ADJ tau {format_tau(statistics.median(row.adj_tau for row in selected))}")
    logging.info(f"Saved {path}.")


# Experiment commands by name
EXPERIMENT_HANDLERS: dict[str, Callable[[ExperimentConfig, bool], None]] = {
    "gen-dataset": cmd_gen_dataset,
    "train": cmd_train,
    "search": cmd_search,
    "compare": cmd_compare,
    "sweep-k": cmd_sweep_k,
    "compare-encodings": cmd_compare_encodings,
}
