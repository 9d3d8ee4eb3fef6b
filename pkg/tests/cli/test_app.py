import logging
from pathlib import Path
from typing import Callable

import pytest

from deltanas.cli.app import main
from deltanas.cli.arguments.parser import parse_arguments
from deltanas.cli.exit_codes import ExitCode
from deltanas.constants import COMPARE_SUMMARY_FILE_NAME, COMPARE_TRACES_FILE_NAME, DATASET_FILE_NAME, \
    ENCODINGS_FILE_NAME, MODEL_FILE_NAME, REGISTRY_FILE_NAME, SEARCH_TRACE_FILE_NAME, SWEEP_FILE_NAME
from deltanas.search.trace import SearchTrace, read_trace_csv


def run(*arguments: str) -> ExitCode:
    return main(parse_arguments(list(arguments)))


def test_size(caplog: pytest.LogCaptureFixture) -> None:
    with caplog.at_level(logging.INFO):
        assert run("size", "--n", "5", "--r", "3", "--k", "1") == ExitCode.SUCCESS
    assert "243" in caplog.text
    assert "15" in caplog.text


@pytest.mark.parametrize("arguments", (
    ("size", "--n", "5", "--r", "3", "--k", "9"),
    ("size", "--n", "1", "--r", "3"),
    ("size", "--kind", "cell", "--n", "4", "--r", "2", "--k", "11"),
))
def test_size_errors(arguments: tuple[str, ...]) -> None:
    assert run(*arguments) == ExitCode.RUNTIME_ERROR


def test_missing_configuration(tmp_path: Path) -> None:
    assert run("gen-dataset", str(tmp_path / "missing.yaml")) == ExitCode.RUNTIME_ERROR


def test_invalid_configuration(experiment_path: Path) -> None:
    assert run("gen-dataset", str(experiment_path), "--set", "dataset.kk=1") == ExitCode.RUNTIME_ERROR
    assert run("gen-dataset", str(experiment_path), "--set", "dataset.k=9") == ExitCode.RUNTIME_ERROR


def test_missing_prerequisites(experiment_path: Path, caplog: pytest.LogCaptureFixture) -> None:
    assert run("train", str(experiment_path)) == ExitCode.RUNTIME_ERROR
    assert "delta-nas gen-dataset" in caplog.text
    assert run("search", str(experiment_path)) == ExitCode.RUNTIME_ERROR
    assert "delta-nas train" in caplog.text


def test_stale_prerequisites(experiment_path: Path) -> None:
    assert run("gen-dataset", str(experiment_path)) == ExitCode.SUCCESS
    # A dataset generated with other settings doesn't count
    assert run("train", str(experiment_path), "--set", "dataset.seed=2") == ExitCode.RUNTIME_ERROR
    # The predictor settings aren't part of the dataset's configuration
    assert run("train", str(experiment_path), "--set", "predictor.training.epochs=6") == ExitCode.SUCCESS


def test_pipeline(experiment_path: Path) -> None:
    output_dir: Path = experiment_path.parent / "runs"
    for command in ("gen-dataset", "train", "search", "compare", "sweep-k", "compare-encodings"):
        assert run(command, str(experiment_path)) == ExitCode.SUCCESS, command

    for file_name in (DATASET_FILE_NAME, MODEL_FILE_NAME, SEARCH_TRACE_FILE_NAME, COMPARE_SUMMARY_FILE_NAME,
                      COMPARE_TRACES_FILE_NAME, SWEEP_FILE_NAME, ENCODINGS_FILE_NAME, REGISTRY_FILE_NAME):
        assert (output_dir / file_name).exists(), file_name
    for file_name in (DATASET_FILE_NAME, MODEL_FILE_NAME, SEARCH_TRACE_FILE_NAME, SWEEP_FILE_NAME):
        assert (output_dir / file_name).read_text(encoding="utf-8").startswith("#config hash=")

    trace: SearchTrace = read_trace_csv(output_dir / SEARCH_TRACE_FILE_NAME)
    assert trace.final.oracle_queries >= 1
    assert all(step.oracle_queries == 0 for step in trace.steps[:-1])

    summary: list[str] = (output_dir / COMPARE_SUMMARY_FILE_NAME).read_text(encoding="utf-8").splitlines()
    assert [line.split(",", 1)[0] for line in summary[3:]] == ["delta_nas", "true_delta", "random", "evolution"]
    sweep: list[str] = (output_dir / SWEEP_FILE_NAME).read_text(encoding="utf-8").splitlines()
    assert sweep[1] == "k,test_mse,test_tau,train_size,test_size"
    assert [line.split(",", 1)[0] for line in sweep[2:]] == ["1", "2"]
    encodings: list[str] = (output_dir / ENCODINGS_FILE_NAME).read_text(encoding="utf-8").splitlines()
    assert encodings[1] == "train_fraction,seed,budget,doa_tau,adj_tau"
    assert encodings[2].startswith("0.25,0,21,")


def test_overwrite_needs_force(experiment_path: Path) -> None:
    dataset_path: Path = experiment_path.parent / "runs" / DATASET_FILE_NAME
    assert run("gen-dataset", str(experiment_path)) == ExitCode.SUCCESS
    dataset: str = dataset_path.read_text(encoding="utf-8")

    assert run("gen-dataset", str(experiment_path)) == ExitCode.RUNTIME_ERROR
    assert run("gen-dataset", str(experiment_path), "--force") == ExitCode.SUCCESS
    assert dataset_path.read_text(encoding="utf-8") == dataset


def test_runs_are_deterministic(tmp_path: Path, experiment_writer: Callable[[Path, Path], Path]) -> None:
    first: Path = experiment_writer(tmp_path, tmp_path / "first")
    (tmp_path / "second").mkdir()
    second: Path = experiment_writer(tmp_path / "second", tmp_path / "second" / "runs")
    for command in ("gen-dataset", "train", "sweep-k"):
        assert run(command, str(first)) == ExitCode.SUCCESS
        assert run(command, str(second)) == ExitCode.SUCCESS

    for file_name in (DATASET_FILE_NAME, MODEL_FILE_NAME, SWEEP_FILE_NAME):
        assert (tmp_path / "first" / file_name).read_bytes() == \
               (tmp_path / "second" / "runs" / file_name).read_bytes(), file_name

    # The search trace echoes the whole configuration, so it's compared with itself after a forced rerun
    assert run("search", str(first)) == ExitCode.SUCCESS
    trace: bytes = (tmp_path / "first" / SEARCH_TRACE_FILE_NAME).read_bytes()
    assert run("search", str(first), "--force") == ExitCode.SUCCESS
    assert (tmp_path / "first" / SEARCH_TRACE_FILE_NAME).read_bytes() == trace
