from .parser import EXPERIMENT_COMMANDS, parse_arguments, setup_argument_parser

__all__ = ("EXPERIMENT_COMMANDS", "parse_arguments", "setup_argument_parser")
