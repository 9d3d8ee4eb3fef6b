from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from threading import Lock
from typing import Iterable

from ..exceptions import SpecMismatchError
from ..space.architecture import Architecture
from ..space.operations import enumerate_space
from ..space.spec import SearchSpaceSpec


class Oracle(ABC):
    """A read-only source of true fitness values for the architectures of one search space."""
    spec: SearchSpaceSpec

    @abstractmethod
    def score(self, architecture: Architecture) -> float:
        """
        The fitness of an architecture.
        :param architecture: an architecture of the oracle's space
        :return: the fitness value
        :raises SpecMismatchError: if the architecture belongs to another space
        """
        raise NotImplementedError("Unimplemented score method.")  # pragma: no cover

    def candidates(self, limit: int) -> Iterable[Architecture]:
        """
        The architectures this oracle can score, in ArchKey order.
        :param limit: the largest number of architectures that may be enumerated
        :return: an iterable of architectures
        :raises SpaceTooLargeError: if the space is larger than limit
        """
        return enumerate_space(self.spec, limit)

    def _check_spec(self, architecture: Architecture) -> None:
        if architecture.spec != self.spec:
            raise SpecMismatchError(f"Architecture {architecture.key} doesn't belong to the oracle's space.")


@dataclass
class CountingOracle(Oracle):
    """Wraps an oracle and counts every query made through it."""
    base: Oracle
    queries: int = 0
    _lock: Lock = field(default_factory=Lock, repr=False, compare=False)

    @property  # type: ignore[override]
    def spec(self) -> SearchSpaceSpec:
        return self.base.spec

    def score(self, architecture: Architecture) -> float:
        value: float = self.base.score(architecture)
        with self._lock:
            self.queries += 1
        return value

    def candidates(self, limit: int) -> Iterable[Architecture]:
        return self.base.candidates(limit)


def best_in_space(oracle: Oracle, spec: SearchSpaceSpec, limit: int) -> tuple[Architecture, float]:
    """
    Finds the best architecture by exhaustive evaluation; ties go to the smallest ArchKey.
    :param oracle: the oracle to maximize
    :param spec: the search space (must be the oracle's)
    :param limit: the largest space that may be enumerated
    :return: the best architecture and its score
    :raises SpaceTooLargeError: if the space is larger than limit
    :raises SpecMismatchError: if spec isn't the oracle's space
    """
    if spec != oracle.spec:
        raise SpecMismatchError("The oracle scores a different search space.")

    best: tuple[Architecture, float] | None = None
    for architecture in oracle.candidates(limit):
        value: float = oracle.score(architecture)
        if best is None or value > best[1] or (value == best[1] and architecture.key < best[0].key):
            best = architecture, value
    assert best is not None, "Search spaces are never empty."
    return best
