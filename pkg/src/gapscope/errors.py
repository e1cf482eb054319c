"""Exception types shared across the package."""


class GapscopeError(Exception):
    """Base class for all gapscope errors."""


class CapacityError(GapscopeError, ValueError):
    """Requested table size is outside the supported range."""


class DomainError(GapscopeError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class MonotonicityError(GapscopeError, ValueError):
    """Sequence terms were not strictly increasing where required."""


class ConfigurationError(GapscopeError, ValueError):
    """Unknown name or invalid parameter for a configurable operation."""


class EmptySampleError(GapscopeError, ValueError):
    """Statistics requested over a sample with no defined entries."""


class CacheError(GapscopeError):
    """Base class for prime-cache file problems.

    `offset` is the byte position at which the problem was detected.
    """

    def __init__(self, message, offset=None):
        super().__init__(message if offset is None else f"{message} (at byte {offset})")
        self.offset = offset


class CacheFormatError(CacheError, ValueError):
    """Cache header is malformed: bad magic, version, or truncated header."""


class CacheCorruptionError(CacheError, ValueError):
    """Cache payload is damaged: truncated gap stream or checksum mismatch."""
