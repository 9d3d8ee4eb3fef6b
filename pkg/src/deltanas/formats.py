import math

from colorama import Fore, Style

from .constants import SCORE_COLOR_THRESHOLDS


def format_count(count: int) -> str:
    """
    Formats a (possibly huge) integer with thousands separators.
    :param count: the integer to format
    :return: a color-formatted string
    """
    return f"{Fore.BLUE}{count:,}{Style.RESET_ALL}"


def format_score(score: float, optimum: float | None = None) -> str:
    """
    Formats a fitness score, colored by its relative gap to a known optimum.
    :param score: the score to format
    :param optimum: the best score in the space, if known
    :return: a color-formatted string
    """
    if optimum is None or not math.isfinite(score):
        return f"{Fore.BLUE}{score:.6f}{Style.RESET_ALL}"

    gap: float = (optimum - score) / abs(optimum) if optimum else optimum - score
    color: str = Fore.RED
    if gap <= SCORE_COLOR_THRESHOLDS[0]:
        color = Fore.GREEN
    elif gap <= SCORE_COLOR_THRESHOLDS[1]:
        color = Fore.LIGHTYELLOW_EX
    return f"{color}{score:.6f}{Style.RESET_ALL} (optimum {optimum:.6f})"


def format_tau(tau: float) -> str:
    """
    Formats a Kendall tau value.
    :param tau: a correlation in [-1, 1]
    :return: a color-formatted string
    """
    color: str = Fore.GREEN if tau >= 0.5 else Fore.LIGHTYELLOW_EX if tau >= 0 else Fore.RED
    return f"{color}{tau:+.3f}{Style.RESET_ALL}"
