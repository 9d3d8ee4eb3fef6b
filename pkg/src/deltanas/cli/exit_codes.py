from __future__ import annotations

from enum import IntEnum


class ExitCode(IntEnum):
    # No errors occurred
    SUCCESS: ExitCode = 0  # type: ignore[assignment]
    # A command failed (bad configuration, missing artifact, I/O or domain error)
    RUNTIME_ERROR: ExitCode = 1  # type: ignore[assignment]
    # The command line couldn't be parsed
    USAGE_ERROR: ExitCode = 2  # type: ignore[assignment]
