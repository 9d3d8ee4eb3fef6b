from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Sequence

from ..config import Config
from ...constants import DEFAULT_ENUMERATION_LIMIT
from ...space.spec import SpaceKind

# Commands that run from an experiment configuration file
EXPERIMENT_COMMANDS: tuple[str, ...] = ("gen-dataset", "train", "search", "compare", "sweep-k", "compare-encodings")


def setup_argument_parser() -> ArgumentParser:
    """
    Sets up an argument parser with all supported commands.
    :return: an ArgumentParser instance
    """
    argument_parser: ArgumentParser = ArgumentParser(prog="delta-nas")

    # Debug variables
    argument_parser.add_argument("--debug", action="store_true", help="log debug messages")

    subparsers = argument_parser.add_subparsers(dest="command", required=True)

    # Search space and DoA cardinalities
    size_parser: ArgumentParser = subparsers.add_parser("size", help="report search space and DoA cardinalities")
    size_parser.add_argument("--kind", type=SpaceKind, choices=tuple(SpaceKind), default=SpaceKind.BLOCK)
    size_parser.add_argument("--n", type=int, required=True, help="the number of nodes")
    size_parser.add_argument("--r", type=int, required=True, help="the number of operations")
    size_parser.add_argument("--k", type=int, nargs="+", default=[1], dest="ks", help="the edit distances")
    size_parser.add_argument("--limit", type=int, default=DEFAULT_ENUMERATION_LIMIT,
                             help="the largest number of architecture pairs counted by brute force")

    # Experiment commands share the configuration flags
    for command in EXPERIMENT_COMMANDS:
        command_parser: ArgumentParser = subparsers.add_parser(command)
        command_parser.add_argument("config_path", type=Path, help="the experiment configuration (YAML)")
        command_parser.add_argument("--set", action="append", default=[], dest="overrides", metavar="KEY=VALUE",
                                    help="override a single configuration key, e.g. dataset.k=2")
        command_parser.add_argument("--force", action="store_true", help="overwrite existing artifacts")

    return argument_parser


def parse_arguments(arguments: Sequence[str] | None = None) -> Config:
    """
    Parses command line arguments into a Config instance.
    Usage errors exit through argparse with status 2.
    :param arguments: the arguments to parse (defaults to sys.argv)
    :return: a Config instance
    """
    argument_parser: ArgumentParser = setup_argument_parser()
    namespace: Namespace = argument_parser.parse_args(arguments)

    if namespace.command == "size":
        return Config(namespace.command, namespace.debug, force=False, kind=namespace.kind, n=namespace.n,
                      r=namespace.r, ks=tuple(namespace.ks), limit=namespace.limit)
    return Config(namespace.command, namespace.debug, namespace.force, config_path=namespace.config_path,
                  overrides=tuple(namespace.overrides))
