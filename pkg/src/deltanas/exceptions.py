class Error(Exception):
    """Generic error exceptions."""


class InvalidSpecError(Error):
    """Raised when a search space specification violates its invariants."""


class SpaceTooLargeError(Error):
    """Raised when an exhaustive operation is requested on a space larger than the allowed limit."""


class InvalidKError(Error):
    """Raised when an edit distance is out of range for a search space."""


class SpecMismatchError(Error):
    """Raised when architectures (or an architecture and an oracle) belong to different search spaces."""


class StaleDiffError(Error):
    """Raised when a difference encoding is applied to an architecture it wasn't taken against."""


class ParserError(Error):
    """Parser-related exceptions."""


class InvalidKeyError(ParserError):
    """Raised when an architecture key doesn't describe a valid architecture."""


class DuplicateKeyError(ParserError):
    """Raised when a benchmark file lists an architecture more than once."""


class UnknownArchitectureError(Error):
    """Raised when an oracle has no value for an architecture."""


class EmptyDatasetError(Error):
    """Raised when an operation needs at least one sample."""


class InsufficientGroupsError(Error):
    """Raised when a dataset split would leave one side empty."""


class DimensionMismatchError(Error):
    """Raised when feature dimensions don't match a model."""


class LengthMismatchError(Error):
    """Raised when paired sequences have different lengths."""


class UndefinedCorrelationError(Error):
    """Raised when a rank correlation is undefined (constant input)."""


class ConfigError(Error):
    """Experiment configuration exceptions."""


class MissingArtifactError(Error):
    """Raised when a prerequisite artifact hasn't been produced yet."""


class ArtifactExistsError(Error):
    """Raised when an artifact would be overwritten without permission."""


class InvalidArchitectureError(Error):
    """Raised when an architecture doesn't fit its search space."""
