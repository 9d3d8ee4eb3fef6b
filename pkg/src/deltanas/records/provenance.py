from __future__ import annotations

from dataclasses import dataclass

from .serializable import MappingGenerator, Serializable


@dataclass(frozen=True)
class ConfigStamp(Serializable):
    """The "#config hash=..." line every artifact starts with."""
    config_hash: str

    @staticmethod
    def _tag() -> str:
        return "config"

    @staticmethod
    def _data_mappings() -> MappingGenerator:
        yield "config_hash", "hash"
