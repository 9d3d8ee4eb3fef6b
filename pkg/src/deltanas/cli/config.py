from dataclasses import dataclass
from pathlib import Path

from ..space.spec import SpaceKind


@dataclass(frozen=True)
class Config:
    command: str
    debug: bool
    force: bool
    # Experiment commands
    config_path: Path | None = None
    overrides: tuple[str, ...] = ()
    # The size command
    kind: SpaceKind = SpaceKind.BLOCK
    n: int = 0
    r: int = 0
    ks: tuple[int, ...] = ()
    limit: int = 0
