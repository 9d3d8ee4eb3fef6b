import struct
from dataclasses import dataclass, field
from hashlib import blake2b

import numpy as np

from .base import Oracle
from ..constants import DEFAULT_PAIR_WEIGHT
from ..space.architecture import Architecture
from ..space.spec import SearchSpaceSpec

_UNARY_TAG: int = 1
_PAIR_TAG: int = 2


def hash_uniform(*values: int) -> float:
    """
    Maps a tuple of integers to a uniform value in [0, 1).
    The integers are packed as little-endian signed 64-bit words, hashed with BLAKE2b (8-byte digest)
      and the digest, read as a little-endian unsigned integer, is divided by 2^64.
    :param values: the integers to hash
    :return: a float in [0, 1)
    """
    digest: bytes = blake2b(struct.pack(f"<{len(values)}q", *values), digest_size=8).digest()
    return int.from_bytes(digest, "little") / 2 ** 64


@dataclass(frozen=True)
class SyntheticLandscape(Oracle):
    """
    A seeded landscape with unary and pairwise terms:
      score = (1 - w) * mean(u(p, value_p)) + w * mean(q(i, j, op_i, op_j)),
      with u over every position (nodes and adjacency bits) and q over every node pair i < j.
    u(p, v) = hash_uniform(1, seed, p, v) and q(i, j, a, b) = hash_uniform(2, seed, i, j, a, b).
    """
    spec: SearchSpaceSpec
    seed: int
    pair_weight: float = DEFAULT_PAIR_WEIGHT
    _unary: np.ndarray = field(init=False, repr=False, compare=False)
    _pairs: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.pair_weight <= 1.0:
            raise ValueError(f"pair_weight must lie in [0, 1], got {self.pair_weight}.")

        spec: SearchSpaceSpec = self.spec
        unary: np.ndarray = np.zeros((spec.num_positions, spec.r), dtype=np.float64)
        for position in range(spec.num_positions):
            for value in range(spec.r if position < spec.n else 2):
                unary[position, value] = hash_uniform(_UNARY_TAG, self.seed, position, value)

        pairs: np.ndarray = np.zeros((spec.n, spec.n, spec.r, spec.r), dtype=np.float64)
        for i in range(spec.n):
            for j in range(i + 1, spec.n):
                for a in range(spec.r):
                    for b in range(spec.r):
                        pairs[i, j, a, b] = hash_uniform(_PAIR_TAG, self.seed, i, j, a, b)

        object.__setattr__(self, "_unary", unary)
        object.__setattr__(self, "_pairs", pairs)

    def unary_term(self, position: int, value: int) -> float:
        return float(self._unary[position, value])

    def pair_term(self, i: int, j: int, op_i: int, op_j: int) -> float:
        return float(self._pairs[i, j, op_i, op_j])

    def score(self, architecture: Architecture) -> float:
        """
        The landscape value of an architecture, in [0, 1].
        :param architecture: an architecture of the landscape's space
        :return: the score
        :raises SpecMismatchError: if the architecture belongs to another space
        """
        self._check_spec(architecture)

        values: np.ndarray = np.asarray(architecture.values)
        unary_mean: float = float(self._unary[np.arange(self.spec.num_positions), values].mean())

        ops: np.ndarray = values[:self.spec.n]
        first, second = np.triu_indices(self.spec.n, k=1)
        pair_mean: float = float(self._pairs[first, second, ops[first], ops[second]].mean())

        return (1.0 - self.pair_weight) * unary_mean + self.pair_weight * pair_mean
