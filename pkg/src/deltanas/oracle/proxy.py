from dataclasses import dataclass
from hashlib import blake2b

import numpy as np

from .base import Oracle
from ..constants import DEFAULT_PROXY_SIGMA
from ..space.architecture import Architecture
from ..space.spec import SearchSpaceSpec


@dataclass(frozen=True)
class NoisyProxy:
    """
    A cheap, noisy estimate of a true oracle: base score plus gaussian noise.
    Every draw is keyed by (seed, ArchKey, call_index), so callers decide which measurements are independent.
    """
    base: Oracle
    sigma: float = DEFAULT_PROXY_SIGMA
    seed: int = 0

    def __post_init__(self) -> None:
        if self.sigma < 0:
            raise ValueError(f"sigma must be non-negative, got {self.sigma}.")

    @property
    def spec(self) -> SearchSpaceSpec:
        return self.base.spec

    def _noise(self, architecture: Architecture, call_index: int) -> float:
        digest: bytes = blake2b(f"{self.seed}|{architecture.key}|{call_index}".encode(), digest_size=16).digest()
        rng: np.random.Generator = np.random.default_rng(int.from_bytes(digest, "little"))
        return float(rng.normal(0.0, self.sigma))

    def score(self, architecture: Architecture, call_index: int) -> float:
        """
        One noisy measurement of an architecture (not clamped to any range).
        :param architecture: an architecture of the proxy's space
        :param call_index: the index of this measurement
        :return: the base score plus noise
        :raises SpecMismatchError: from the base oracle
        """
        value: float = self.base.score(architecture)
        if self.sigma == 0:
            return value
        return value + self._noise(architecture, call_index)
