from __future__ import annotations

from dataclasses import dataclass
from typing import TypeAlias

import numpy as np

from ..exceptions import ParserError, SpecMismatchError, StaleDiffError
from ..space.architecture import Architecture
from ..space.spec import SearchSpaceSpec

# A real vector with the layout of a OneHotEncoding, holding only -1, 0 and +1
DiffFeature: TypeAlias = np.ndarray

_EMPTY_DIFF_TEXT: str = "-"
_ADJ_PREFIX: str = "a"


@dataclass(frozen=True)
class Edit:
    position: int
    old_val: int
    new_val: int
    is_adj: bool = False

    def __post_init__(self) -> None:
        if self.old_val == self.new_val:
            raise ValueError(f"An edit must change its value, got {self.old_val}>{self.new_val}.")
        if self.position < 0:
            raise ValueError(f"Edit positions are non-negative, got {self.position}.")

    @property
    def sort_key(self) -> tuple[bool, int]:
        return self.is_adj, self.position

    def reversed(self) -> Edit:
        return Edit(self.position, self.new_val, self.old_val, self.is_adj)

    def __str__(self) -> str:
        return f"{_ADJ_PREFIX if self.is_adj else ''}{self.position}:{self.old_val}>{self.new_val}"


@dataclass(frozen=True)
class DiffEncoding:
    """The sparse list of edits that turns one architecture into another."""
    edits: tuple[Edit, ...] = ()

    def __post_init__(self) -> None:
        sort_keys: list[tuple[bool, int]] = [edit.sort_key for edit in self.edits]
        if sort_keys != sorted(set(sort_keys)):
            raise ValueError("Edits must be sorted by (is_adj, position) with unique positions.")

    def __len__(self) -> int:
        return len(self.edits)

    def __str__(self) -> str:
        return format_diff(self)


def diff(source: Architecture, target: Architecture) -> DiffEncoding:
    """
    Computes the edits between two architectures.
    :param source: the architecture to start from
    :param target: the architecture to arrive at
    :return: the DiffEncoding such that apply_diff(source, result) == target
    :raises SpecMismatchError: if the architectures belong to different spaces
    """
    if source.spec != target.spec:
        raise SpecMismatchError("Architectures belong to different search spaces.")

    edits: list[Edit] = [Edit(position, old, new) for position, (old, new) in enumerate(zip(source.ops, target.ops))
                         if old != new]
    if source.adj is not None and target.adj is not None:
        edits.extend(Edit(position, old, new, is_adj=True)
                     for position, (old, new) in enumerate(zip(source.adj, target.adj)) if old != new)
    return DiffEncoding(tuple(edits))


def apply_diff(base: Architecture, difference: DiffEncoding) -> Architecture:
    """
    Applies a difference encoding to an architecture.
    :param base: the architecture the difference was taken against
    :param difference: a DiffEncoding instance
    :return: the edited Architecture
    :raises StaleDiffError: if an edit's old value (or position) doesn't match the base
    """
    ops: list[int] = list(base.ops)
    adj: list[int] = list(base.adj or ())
    for edit in difference.edits:
        target: list[int] = adj if edit.is_adj else ops
        if edit.position >= len(target) or target[edit.position] != edit.old_val:
            raise StaleDiffError(f"Edit {edit} doesn't match the base architecture {base.key}.")
        target[edit.position] = edit.new_val
    return Architecture(base.spec, tuple(ops), tuple(adj) if base.adj is not None else None)


def reverse_diff(difference: DiffEncoding) -> DiffEncoding:
    """
    The difference that undoes another: apply_diff(apply_diff(a, d), reverse_diff(d)) == a.
    :param difference: a DiffEncoding instance
    :return: the reversed DiffEncoding
    """
    return DiffEncoding(tuple(edit.reversed() for edit in difference.edits))


def diff_to_feature(difference: DiffEncoding, spec: SearchSpaceSpec) -> DiffFeature:
    """
    Builds the signed feature vector of a difference: -1 at (node, old op), +1 at (node, new op),
      and the signed flip at each edited adjacency slot.
    :param difference: a DiffEncoding instance
    :param spec: the search space of the difference
    :return: a vector equal to encode_onehot(target) - encode_onehot(source)
    """
    feature: DiffFeature = np.zeros(spec.onehot_dim, dtype=np.float64)
    for edit in difference.edits:
        if edit.is_adj:
            feature[spec.n * spec.r + edit.position] = edit.new_val - edit.old_val
        else:
            feature[edit.position * spec.r + edit.old_val] = -1.0
            feature[edit.position * spec.r + edit.new_val] = 1.0
    return feature


def format_diff(difference: DiffEncoding) -> str:
    """
    Formats a difference as "pos:old>new[,...]", adjacency edits prefixed with "a" and "-" for no edits.
    :param difference: a DiffEncoding instance
    :return: the compact text record
    """
    if not difference.edits:
        return _EMPTY_DIFF_TEXT
    return ",".join(str(edit) for edit in difference.edits)


def parse_diff(text: str) -> DiffEncoding:
    """
    Parses a compact difference record.
    :param text: a record produced by format_diff
    :return: the DiffEncoding
    :raises ParserError: if the record is malformed or not canonical
    """
    if text == _EMPTY_DIFF_TEXT:
        return DiffEncoding()

    edits: list[Edit] = []
    for token in text.split(","):
        is_adj: bool = token.startswith(_ADJ_PREFIX)
        position_text, _, values_text = token.removeprefix(_ADJ_PREFIX).partition(":")
        old_text, _, new_text = values_text.partition(">")
        if not (position_text.isdigit() and old_text.isdigit() and new_text.isdigit()):
            raise ParserError(f"Malformed edit {token!r} in difference record {text!r}.")
        try:
            edits.append(Edit(int(position_text), int(old_text), int(new_text), is_adj))
        except ValueError as exception:
            raise ParserError(f"Invalid edit {token!r}: {exception}")

    try:
        difference: DiffEncoding = DiffEncoding(tuple(edits))
    except ValueError as exception:
        raise ParserError(f"Invalid difference record {text!r}: {exception}")
    if format_diff(difference) != text:
        raise ParserError(f"Difference record {text!r} isn't canonical, expected {format_diff(difference)!r}.")
    return difference
