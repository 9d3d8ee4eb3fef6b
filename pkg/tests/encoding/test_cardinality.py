import math

import pytest

from deltanas.encoding.cardinality import dk_size_brute_force, dk_size_closed_form, dk_size_exact, dk_size_paper
from deltanas.exceptions import InvalidKError, SpaceTooLargeError
from deltanas.space.operations import space_size_paper
from deltanas.space.spec import SearchSpaceSpec, SpaceKind


@pytest.mark.parametrize("n, r, k, expected", ((5, 3, 1, 15), (5, 3, 2, 90), (4, 2, 4, 16)))
def test_position_value_counts(n: int, r: int, k: int, expected: int) -> None:
    assert dk_size_paper(SearchSpaceSpec(SpaceKind.BLOCK, n, r), k) == expected


@pytest.mark.parametrize("n, r, k, expected", ((5, 3, 1, 30), (4, 2, 1, 8), (3, 3, 2, 108)))
def test_exact_counts(n: int, r: int, k: int, expected: int) -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.BLOCK, n, r)
    assert dk_size_exact(spec, k) == dk_size_brute_force(spec, k) == dk_size_closed_form(spec, k) == expected


def test_binary_projection_matches_position_value_count() -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.BLOCK, 4, 2)
    assert dk_size_brute_force(spec, 1, project=True) == dk_size_paper(spec, 1) == 8


@pytest.mark.slow
@pytest.mark.parametrize("n", (4, 5, 6))
@pytest.mark.parametrize("r", (2, 3, 4))
@pytest.mark.parametrize("k", (1, 2, 3))
def test_position_value_count_matches_brute_force(n: int, r: int, k: int) -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.BLOCK, n, r)
    assert dk_size_paper(spec, k) == r ** k * math.comb(n, k)
    assert dk_size_brute_force(spec, k, limit=10 ** 7, project=True) == dk_size_paper(spec, k)
    assert dk_size_brute_force(spec, k, limit=10 ** 7) == dk_size_closed_form(spec, k)


@pytest.mark.parametrize("k", (1, 2, 3))
def test_cell_counts_match_brute_force(k: int) -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.CELL, 3, 2)
    assert dk_size_brute_force(spec, k) == dk_size_closed_form(spec, k)
    assert dk_size_brute_force(spec, k, project=True) == dk_size_paper(spec, k)


def test_difference_space_shrinks_relative_to_search_space() -> None:
    ratios: list[float] = [dk_size_paper(spec, 1) / space_size_paper(spec)
                           for spec in (SearchSpaceSpec(SpaceKind.BLOCK, n, 3) for n in (4, 8, 12))]
    assert ratios == sorted(ratios, reverse=True)
    assert ratios[-1] < 1e-4


def test_brute_force_limit() -> None:
    with pytest.raises(SpaceTooLargeError):
        dk_size_brute_force(SearchSpaceSpec(SpaceKind.BLOCK, 8, 3), 1, limit=1000)


def test_exact_falls_back_to_closed_form() -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.BLOCK, 20, 4)
    assert dk_size_exact(spec, 2) == math.comb(20, 2) * 12 ** 2


@pytest.mark.parametrize("k", (0, 6))
def test_invalid_k(k: int) -> None:
    spec: SearchSpaceSpec = SearchSpaceSpec(SpaceKind.BLOCK, 5, 3)
    for count in (dk_size_paper, dk_size_closed_form, dk_size_exact, dk_size_brute_force):
        with pytest.raises(InvalidKError):
            count(spec, k)
