"""Exception types used across the package."""


class DiskpackError(Exception):
    """Base class for all diskpack errors."""


class InvalidInputError(DiskpackError):
    """Bad user input (malformed data, invalid vectors, duplicate disks).

    ``code`` is a short machine-readable tag: "malformed", "non-finite",
    "zero-vector", "duplicate-disk", "bad-parameter".
    """

    def __init__(self, message, code="bad-parameter"):
        super().__init__(message)
        self.code = code


class GeometryError(DiskpackError):
    """A geometric predicate failed beyond its tolerances.

    Signals a real numerical problem instead of silently returning a wrong
    value; carries the offending inputs for diagnosis.
    """

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


class SizeExceededError(DiskpackError):
    """Instance too large for an exact solver."""
