from __future__ import annotations

from dataclasses import dataclass
from typing import TypeAlias

from .spec import SearchSpaceSpec, SpaceKind
from ..exceptions import InvalidArchitectureError, InvalidKeyError

ArchKey: TypeAlias = str


@dataclass(frozen=True)
class Architecture:
    spec: SearchSpaceSpec
    ops: tuple[int, ...]
    adj: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        """
        Validate the architecture against its search space.
        :raises InvalidArchitectureError: if the ops or adjacency bits don't fit the spec
        """
        object.__setattr__(self, "ops", tuple(int(op) for op in self.ops))
        if len(self.ops) != self.spec.n:
            raise InvalidArchitectureError(f"Expected {self.spec.n} operations, got {len(self.ops)}.")
        if any(not 0 <= op < self.spec.r for op in self.ops):
            raise InvalidArchitectureError(f"Operation indices must lie in [0, {self.spec.r}), got {self.ops}.")

        if self.spec.kind is SpaceKind.BLOCK:
            if self.adj is not None:
                raise InvalidArchitectureError("Block-based architectures have no adjacency bits.")
            return

        if self.adj is None:
            raise InvalidArchitectureError("Cell-based architectures need adjacency bits.")
        object.__setattr__(self, "adj", tuple(int(bit) for bit in self.adj))
        assert self.adj is not None
        if len(self.adj) != self.spec.num_edges:
            raise InvalidArchitectureError(f"Expected {self.spec.num_edges} adjacency bits, got {len(self.adj)}.")
        if any(bit not in (0, 1) for bit in self.adj):
            raise InvalidArchitectureError(f"Adjacency bits must be 0 or 1, got {self.adj}.")

    @property
    def values(self) -> tuple[int, ...]:
        """Every editable position: the operations followed by the adjacency bits."""
        return self.ops + (self.adj or ())

    @property
    def key(self) -> ArchKey:
        return format_key(self)

    @classmethod
    def from_values(cls, spec: SearchSpaceSpec, values: tuple[int, ...] | list[int]) -> Architecture:
        """
        Build an architecture from its flat position values.
        :param spec: the search space
        :param values: the operations followed by the adjacency bits
        :return: an Architecture instance
        """
        ops: tuple[int, ...] = tuple(values[:spec.n])
        adj: tuple[int, ...] | None = tuple(values[spec.n:]) if spec.kind is SpaceKind.CELL else None
        if spec.kind is SpaceKind.BLOCK and len(values) != spec.n:
            raise InvalidArchitectureError(f"Expected {spec.n} values, got {len(values)}.")
        return cls(spec, ops, adj)

    def __str__(self) -> str:
        return self.key


def format_key(architecture: Architecture) -> ArchKey:
    """
    Formats the canonical key of an architecture, e.g. "0-2-1" or "0-1-1:101".
    :param architecture: an Architecture instance
    :return: the architecture's key
    """
    key: str = "-".join(str(op) for op in architecture.ops)
    if architecture.adj is not None:
        key += ":" + "".join(str(bit) for bit in architecture.adj)
    return key


def parse_key(spec: SearchSpaceSpec, key: ArchKey) -> Architecture:
    """
    Parses an architecture key.
    :param spec: the search space the key belongs to
    :param key: a key produced by format_key
    :return: the Architecture the key describes
    :raises InvalidKeyError: if the key is malformed, isn't canonical (e.g. "01-2") or doesn't fit the spec
    """
    ops_text, separator, adj_text = key.partition(":")
    if bool(separator) != (spec.kind is SpaceKind.CELL):
        raise InvalidKeyError(f"Key {key!r} doesn't match a {spec.kind} space.")

    try:
        ops: tuple[int, ...] = tuple(int(op) for op in ops_text.split("-"))
        if any(not op.isdigit() for op in ops_text.split("-")) or any(bit not in "01" for bit in adj_text):
            raise ValueError(key)
        adj: tuple[int, ...] | None = tuple(int(bit) for bit in adj_text) if separator else None
        architecture: Architecture = Architecture(spec, ops, adj)
    except (ValueError, InvalidArchitectureError) as exception:
        raise InvalidKeyError(f"Invalid architecture key {key!r}: {exception}")

    # Keys and architectures are in one-to-one correspondence
    if architecture.key != key:
        raise InvalidKeyError(f"Architecture key {key!r} isn't canonical, expected {architecture.key!r}.")
    return architecture
