import itertools
import math
from typing import Iterator, Sequence

import numpy as np

from .architecture import Architecture
from .spec import SearchSpaceSpec, SpaceKind
from ..exceptions import InvalidKError, SpaceTooLargeError, SpecMismatchError
from ..seeding import SeedLike, make_rng


def space_size_paper(spec: SearchSpaceSpec) -> int:
    """
    The search space cardinality as stated by the closed forms:
      r^n for block spaces and (n(n-1)/2) * r^n for cell spaces.
    :param spec: the search space
    :return: the stated number of architectures
    """
    if spec.kind is SpaceKind.BLOCK:
        return spec.r ** spec.n
    return spec.num_edges * spec.r ** spec.n


def space_size_exact(spec: SearchSpaceSpec) -> int:
    """
    The number of distinct Architecture values: r^n, times 2^(n(n-1)/2) for cell spaces.
    :param spec: the search space
    :return: the exact number of architectures
    """
    return 2 ** spec.num_edges * spec.r ** spec.n


def enumerate_space(spec: SearchSpaceSpec, limit: int) -> Iterator[Architecture]:
    """
    Enumerates every architecture of a space exactly once, in ArchKey order.
    :param spec: the search space
    :param limit: the largest space that may be enumerated
    :return: an iterator over all architectures
    :raises SpaceTooLargeError: if the space holds more than limit architectures
    """
    size: int = space_size_exact(spec)
    if size > limit:
        raise SpaceTooLargeError(f"The space holds {size} architectures, more than the limit of {limit}.")
    return _enumerate_space(spec)


def _enumerate_space(spec: SearchSpaceSpec) -> Iterator[Architecture]:
    ops_choices: Iterator[tuple[int, ...]] = itertools.product(range(spec.r), repeat=spec.n)
    architectures: Iterator[Architecture]
    if spec.kind is SpaceKind.BLOCK:
        architectures = (Architecture(spec, ops) for ops in ops_choices)
    else:
        architectures = (Architecture(spec, ops, adj)
                         for ops in ops_choices for adj in itertools.product((0, 1), repeat=spec.num_edges))

    # Multi-digit operation indices don't sort numerically as text
    if spec.r > 10:
        yield from sorted(architectures, key=lambda architecture: architecture.key)
    else:
        yield from architectures


def random_architecture(spec: SearchSpaceSpec, seed: SeedLike) -> Architecture:
    """
    Draws an architecture uniformly from the space.
    :param spec: the search space
    :param seed: a seed or a numpy Generator
    :return: a random Architecture
    """
    rng: np.random.Generator = make_rng(seed)
    ops: tuple[int, ...] = tuple(int(op) for op in rng.integers(0, spec.r, size=spec.n))
    if spec.kind is SpaceKind.BLOCK:
        return Architecture(spec, ops)
    adj: tuple[int, ...] = tuple(int(bit) for bit in rng.integers(0, 2, size=spec.num_edges))
    return Architecture(spec, ops, adj)


def _check_k(spec: SearchSpaceSpec, k: int) -> None:
    if not 1 <= k <= spec.max_k():
        raise InvalidKError(f"Edit distance k={k} is outside [1, {spec.max_k()}] for the {spec.kind} space "
                            f"with n={spec.n}.")


def _alternatives(spec: SearchSpaceSpec, position: int, value: int) -> tuple[int, ...]:
    """The values a position can be edited to."""
    if position < spec.n:
        return tuple(other for other in range(spec.r) if other != value)
    return (1 - value,)


def neighbors_k(architecture: Architecture, k: int) -> Iterator[Architecture]:
    """
    Yields every architecture at edit distance exactly k, each once, in a deterministic order:
      position sets in lexicographic order, then replacement values in ascending order.
    :param architecture: the architecture to edit
    :param k: the number of edits
    :return: an iterator over the neighbors
    :raises InvalidKError: if k is outside [1, number of positions]
    """
    spec: SearchSpaceSpec = architecture.spec
    _check_k(spec, k)
    return _neighbors_k(architecture, k)


def _neighbors_k(architecture: Architecture, k: int) -> Iterator[Architecture]:
    spec: SearchSpaceSpec = architecture.spec
    values: tuple[int, ...] = architecture.values
    for positions in itertools.combinations(range(spec.num_positions), k):
        choices: list[tuple[int, ...]] = [_alternatives(spec, position, values[position]) for position in positions]
        for replacement in itertools.product(*choices):
            edited: list[int] = list(values)
            for position, value in zip(positions, replacement):
                edited[position] = value
            yield Architecture.from_values(spec, edited)


def count_neighbors_k(spec: SearchSpaceSpec, k: int) -> int:
    """
    The number of architectures at edit distance exactly k from any architecture.
    :param spec: the search space
    :param k: the number of edits
    :return: sum over op-edit counts j of C(n, j) * C(E, k - j) * (r - 1)^j
    :raises InvalidKError: if k is out of range
    """
    _check_k(spec, k)
    return sum(math.comb(spec.n, j) * math.comb(spec.num_edges, k - j) * (spec.r - 1) ** j
               for j in range(0, min(k, spec.n) + 1))


def random_neighbor(architecture: Architecture, k: int, seed: SeedLike) -> Architecture:
    """
    Draws a neighbor uniformly from the architectures at edit distance exactly k, without enumerating them.
    :param architecture: the architecture to edit
    :param k: the number of edits
    :param seed: a seed or a numpy Generator
    :return: a random k-edit neighbor
    :raises InvalidKError: if k is out of range
    """
    spec: SearchSpaceSpec = architecture.spec
    _check_k(spec, k)
    rng: np.random.Generator = make_rng(seed)

    # Pick how many of the k edits are operation edits, weighted by the number of neighbors of each shape
    op_edit_counts: list[int] = [j for j in range(0, min(k, spec.n) + 1) if k - j <= spec.num_edges]
    weights: np.ndarray = np.array([math.comb(spec.n, j) * math.comb(spec.num_edges, k - j) * (spec.r - 1) ** j
                                    for j in op_edit_counts], dtype=np.float64)
    op_edits: int = op_edit_counts[int(rng.choice(len(op_edit_counts), p=weights / weights.sum()))]

    op_positions: np.ndarray = rng.choice(spec.n, size=op_edits, replace=False)
    adj_positions: np.ndarray = spec.n + rng.choice(spec.num_edges, size=k - op_edits, replace=False) \
        if k > op_edits else np.empty(0, dtype=np.int64)

    edited: list[int] = list(architecture.values)
    for position in op_positions:
        # Shift by 1..r-1 so the new value always differs
        edited[position] = (edited[position] + int(rng.integers(1, spec.r))) % spec.r
    for position in adj_positions:
        edited[position] = 1 - edited[position]
    return Architecture.from_values(spec, edited)


def edit_distance(a: Architecture, b: Architecture) -> int:
    """
    The number of positions (operations and adjacency bits) at which two architectures differ.
    :param a: an Architecture instance
    :param b: an Architecture instance of the same space
    :return: the Hamming distance between the architectures
    :raises SpecMismatchError: if the architectures belong to different spaces
    """
    if a.spec != b.spec:
        raise SpecMismatchError("Architectures belong to different search spaces.")
    return sum(left != right for left, right in zip(a.values, b.values))


def mean_edit_distance(population: Sequence[Architecture], target: Architecture) -> float:
    """
    The average edit distance from a population to a target architecture.
    :param population: a non-empty sequence of architectures
    :param target: the architecture to measure against
    :return: the mean distance
    """
    return sum(edit_distance(member, target) for member in population) / len(population)
