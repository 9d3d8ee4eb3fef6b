import logging
import sys

from colorama import Fore, Style, colorama_text

from .arguments.parser import parse_arguments
from .commands import EXPERIMENT_HANDLERS, cmd_size
from .config import Config
from .exit_codes import ExitCode
from .experiment import ExperimentConfig, load_experiment
from ..exceptions import ArtifactExistsError, ConfigError, Error, MissingArtifactError, ParserError

# Level name colors
LEVEL_COLORS: dict[int, str] = {
    logging.DEBUG: Fore.CYAN,
    logging.INFO: Fore.GREEN,
    logging.WARNING: Fore.YELLOW,
    logging.ERROR: Fore.RED,
    logging.CRITICAL: Style.BRIGHT + Fore.RED,
}


def setup_logger(config: Config) -> None:
    """
    Sets up the application logger; debug runs also show seconds and the module each message comes from.
    :param config: the configuration provided by the user
    """
    if config.debug:
        logging.basicConfig(format="[%(asctime)s, %(levelname)s] %(module)s: %(message)s", datefmt="%H:%M:%S",
                            level=logging.DEBUG, stream=sys.stdout)
    else:
        logging.basicConfig(format="[%(asctime)s, %(levelname)s] %(message)s", datefmt="%H:%M",
                            level=logging.INFO, stream=sys.stdout)

    # Level names are padded before they are colored
    for level, color in LEVEL_COLORS.items():
        logging.addLevelName(level, f"{color}{logging.getLevelName(level):>8}{Style.RESET_ALL}")


def console_main() -> ExitCode:
    """
    The CLI entry point for the package.
    :return: an exit code.
    """
    # Initialize Colorama
    with colorama_text():
        # Parse the arguments (usage errors exit with status 2 here)
        config: Config = parse_arguments()

        # Setup the logger
        setup_logger(config)

        # Run the command
        return main(config)


def main(config: Config) -> ExitCode:
    """
    Run a command and provide an exit code.
    :param config: the configuration provided by the user
    :return: an exit code.
    """
    try:
        if config.command == "size":
            cmd_size(config.kind, config.n, config.r, config.ks, config.limit)
        else:
            assert config.config_path is not None, "Experiment commands need a configuration file."
            experiment: ExperimentConfig = load_experiment(config.config_path, config.overrides)
            EXPERIMENT_HANDLERS[config.command](experiment, config.force)
    except ConfigError as exception:
        logging.error(f"Invalid configuration: {exception}")
        return ExitCode.RUNTIME_ERROR
    except MissingArtifactError as exception:
        logging.error(f"Missing prerequisite: {exception}")
        return ExitCode.RUNTIME_ERROR
    except ArtifactExistsError as exception:
        logging.error(str(exception))
        return ExitCode.RUNTIME_ERROR
    except ParserError as exception:
        logging.error(f"Failed to parse an input file: {exception}")
        return ExitCode.RUNTIME_ERROR
    except Error as exception:
        logging.error(f"{config.command} failed: {exception}")
        logging.debug(f"Error: {exception=}")
        return ExitCode.RUNTIME_ERROR
    except OSError as exception:
        logging.critical(f"A file couldn't be read or written: {exception}")
        logging.debug(f"OS error: {exception=}")
        return ExitCode.RUNTIME_ERROR

    return ExitCode.SUCCESS


if __name__ == "__main__":
    raise SystemExit(console_main())
