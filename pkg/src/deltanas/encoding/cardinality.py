import itertools
import math

from ..constants import DEFAULT_ENUMERATION_LIMIT
from ..exceptions import InvalidKError, SpaceTooLargeError
from ..space.operations import count_neighbors_k, space_size_exact
from ..space.spec import SearchSpaceSpec, SpaceKind

# A difference as (positions, old values, new values) over the flat position layout
_RawDiff = tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]


def _check_k(spec: SearchSpaceSpec, k: int) -> None:
    # Block spaces can't be edited in more than n places; cell spaces add one position per adjacency bit
    if not 1 <= k <= spec.max_k():
        raise InvalidKError(f"Edit distance k={k} is outside [1, {spec.max_k()}] for the {spec.kind} space "
                            f"with n={spec.n}.")


def _split_counts(spec: SearchSpaceSpec, k: int) -> range:
    """The possible numbers of operation edits among k edits."""
    return range(max(0, k - spec.num_edges), min(k, spec.n) + 1)


def dk_size_paper(spec: SearchSpaceSpec, k: int) -> int:
    """
    The size of the k-edit difference space counted by (positions, new values): r^k * C(n, k) for block spaces,
      so k=1 gives r*n. Adjacency flips count as extra positions with two values.
    :param spec: the search space
    :param k: the number of edits
    :return: the number of distinct position/new-value projections
    :raises InvalidKError: if k is out of range
    """
    _check_k(spec, k)
    if spec.kind is SpaceKind.BLOCK:
        return spec.r ** k * math.comb(spec.n, k)
    return sum(math.comb(spec.n, j) * spec.r ** j * math.comb(spec.num_edges, k - j) * 2 ** (k - j)
               for j in _split_counts(spec, k))


def dk_size_closed_form(spec: SearchSpaceSpec, k: int) -> int:
    """
    The number of distinct signed differences (position, old, new) at edit distance k:
      C(n, k) * (r(r-1))^k for block spaces; each adjacency flip has two signed forms.
    :param spec: the search space
    :param k: the number of edits
    :return: the number of distinct DiffEncoding values
    :raises InvalidKError: if k is out of range
    """
    _check_k(spec, k)
    return sum(math.comb(spec.n, j) * (spec.r * (spec.r - 1)) ** j * math.comb(spec.num_edges, k - j) * 2 ** (k - j)
               for j in _split_counts(spec, k))


def _distinct_diffs(spec: SearchSpaceSpec, k: int) -> set[_RawDiff]:
    """Brute force: collect the differences of every ordered pair at edit distance k."""
    diffs: set[_RawDiff] = set()
    position_sets: list[tuple[int, ...]] = list(itertools.combinations(range(spec.num_positions), k))
    value_ranges: list[range] = [range(spec.r)] * spec.n + [range(2)] * spec.num_edges
    for values in itertools.product(*value_ranges):
        for positions in position_sets:
            olds: tuple[int, ...] = tuple(values[position] for position in positions)
            alternatives: list[tuple[int, ...]] = [
                tuple(other for other in value_ranges[position] if other != old)
                for position, old in zip(positions, olds)]
            for news in itertools.product(*alternatives):
                diffs.add((positions, olds, news))
    return diffs


def dk_size_brute_force(spec: SearchSpaceSpec, k: int, limit: int = DEFAULT_ENUMERATION_LIMIT,
                        project: bool = False) -> int:
    """
    Counts difference encodings by enumerating every ordered architecture pair at edit distance k.
    :param spec: the search space
    :param k: the number of edits
    :param limit: the largest number of ordered pairs that may be enumerated
    :param project: count (positions, new values) projections instead of full signed differences
    :return: the number of distinct differences (or projections)
    :raises InvalidKError: if k is out of range
    :raises SpaceTooLargeError: if there are more than limit ordered pairs
    """
    _check_k(spec, k)
    pairs: int = space_size_exact(spec) * count_neighbors_k(spec, k)
    if pairs > limit:
        raise SpaceTooLargeError(f"Counting requires {pairs} ordered pairs, more than the limit of {limit}.")

    diffs: set[_RawDiff] = _distinct_diffs(spec, k)
    if project:
        return len({(positions, news) for positions, _, news in diffs})
    return len(diffs)


def dk_size_exact(spec: SearchSpaceSpec, k: int, limit: int = DEFAULT_ENUMERATION_LIMIT) -> int:
    """
    The number of distinct DiffEncoding values at edit distance k; enumerated when at most limit ordered
      pairs exist, computed in closed form otherwise.
    :param spec: the search space
    :param k: the number of edits
    :param limit: the enumeration budget in ordered pairs
    :return: the number of distinct DiffEncoding values
    :raises InvalidKError: if k is out of range
    """
    _check_k(spec, k)
    if space_size_exact(spec) * count_neighbors_k(spec, k) <= limit:
        return dk_size_brute_force(spec, k, limit=limit)
    return dk_size_closed_form(spec, k)
