from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum

from ..exceptions import InvalidSpecError
from ..records.serializable import MappingGenerator, Serializable


class SpaceKind(StrEnum):
    # Fixed connectivity, one operation per node
    BLOCK = "block"
    # Operations per node plus the strict upper triangle of the adjacency matrix
    CELL = "cell"


@dataclass(frozen=True)
class SearchSpaceSpec:
    kind: SpaceKind
    n: int
    r: int
    # Labels are cosmetic: specs with the same kind, n and r are equal
    op_names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        """
        Validate the specification and fill in default operation labels.
        :raises InvalidSpecError: if n < 2, r < 2 or the labels aren't r unique names
        """
        if not isinstance(self.kind, SpaceKind):
            try:
                object.__setattr__(self, "kind", SpaceKind(self.kind))
            except ValueError:
                raise InvalidSpecError(f"Unknown search space kind {self.kind!r}.")
        if self.n < 2:
            raise InvalidSpecError(f"A search space needs at least 2 nodes, got n={self.n}.")
        if self.r < 2:
            raise InvalidSpecError(f"A search space needs at least 2 operations, got r={self.r}.")

        if not self.op_names:
            object.__setattr__(self, "op_names", tuple(f"op{i}" for i in range(self.r)))
        if len(self.op_names) != self.r or len(set(self.op_names)) != self.r:
            raise InvalidSpecError(f"Expected {self.r} unique operation names, got {self.op_names!r}.")

    @property
    def num_edges(self) -> int:
        """The number of adjacency bits (zero for block spaces)."""
        return self.n * (self.n - 1) // 2 if self.kind is SpaceKind.CELL else 0

    @property
    def num_positions(self) -> int:
        """The number of editable positions: one per node plus one per adjacency bit."""
        return self.n + self.num_edges

    @property
    def onehot_dim(self) -> int:
        """The length of one-hot and difference feature vectors."""
        return self.n * self.r + self.num_edges

    def max_k(self) -> int:
        """The largest valid edit distance."""
        return self.num_positions

    def to_record(self) -> SpecRecord:
        return SpecRecord(self.kind, self.n, self.r)

    def describe(self) -> str:
        return f"{self.kind} space, n={self.n}, r={self.r} ({', '.join(self.op_names)})"


@dataclass(frozen=True)
class SpecRecord(Serializable):
    """The "#spec kind=... n=... r=..." header shared by the file formats."""
    kind: SpaceKind
    n: int
    r: int

    @staticmethod
    def _tag() -> str:
        return "spec"

    @staticmethod
    def _data_mappings() -> MappingGenerator:
        yield "kind", "kind"
        yield "n", "n"
        yield "r", "r"

    def to_spec(self) -> SearchSpaceSpec:
        """
        Build the specification described by the header.
        :return: a SearchSpaceSpec with default operation labels
        :raises InvalidSpecError: from SearchSpaceSpec
        """
        return SearchSpaceSpec(self.kind, self.n, self.r)


# Named spaces shaped like the public tabular benchmarks
PRESETS: dict[str, SearchSpaceSpec] = {
    "desk": SearchSpaceSpec(SpaceKind.BLOCK, n=8, r=3, op_names=("conv3x3", "conv1x1", "maxpool3x3")),
    "nb101_like": SearchSpaceSpec(SpaceKind.CELL, n=5, r=3, op_names=("conv3x3", "conv1x1", "maxpool3x3")),
    "nb201_like": SearchSpaceSpec(SpaceKind.CELL, n=4, r=5,
                                  op_names=("none", "skip", "conv1x1", "conv3x3", "avgpool3x3")),
    "nb301_like": SearchSpaceSpec(SpaceKind.BLOCK, n=20, r=4,
                                  op_names=("sep_conv3x3", "sep_conv5x5", "dil_conv3x3", "skip")),
}


def preset(name: str) -> SearchSpaceSpec:
    """
    Look up a named search space.
    :param name: the preset name
    :return: the preset's specification
    :raises InvalidSpecError: if there's no such preset
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise InvalidSpecError(f"Unknown search space preset {name!r}, expected one of {sorted(PRESETS)}.")
