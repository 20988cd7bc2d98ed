"""Exception types raised by the descriptor, retrieval and dataset layers."""


class LeafShapeError(Exception):
    """Base class for all package errors."""


class AllBackgroundError(LeafShapeError, ValueError):
    """Thresholding left no foreground pixel (unusable image or wrong polarity)."""


class DegenerateShapeError(LeafShapeError, ValueError):
    """The silhouette is too small or thin for the requested measurement."""


class InvalidIndexError(LeafShapeError, ValueError):
    """A Zernike (order, repetition) pair violates |m| <= n, n - |m| even."""


class FrequencyOutOfRangeError(LeafShapeError, ValueError):
    """Requested more Fourier frequencies than the polar grid holds."""


class DimensionMismatchError(LeafShapeError, ValueError):
    """Feature vectors (or statistics) of different kind or length were mixed."""


class EmptyDatabaseError(LeafShapeError, ValueError):
    pass


class InsufficientResultsError(LeafShapeError, ValueError):
    pass


class ManifestParseError(LeafShapeError, ValueError):
    """A manifest row could not be parsed; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DuplicatePathError(ManifestParseError):
    pass


class MissingCacheError(LeafShapeError, FileNotFoundError):
    pass


class ExtractionError(LeafShapeError):
    """One or more records failed extraction. ``failures`` maps record id to message."""

    def __init__(self, failures):
        self.failures = dict(failures)
        lines = [f"{rid}: {msg}" for rid, msg in self.failures.items()]
        super().__init__(f"{len(lines)} record(s) failed extraction:\n" + "\n".join(lines))
