"""
Exception types raised by the pmvc package.

Every error derives from PmvcError and from the closest built-in exception,
so callers can catch either the package hierarchy or the usual ValueError /
RuntimeError / ArithmeticError.
"""


class PmvcError(Exception):
    """Root of the package's exception hierarchy."""


class InputFormatError(PmvcError, ValueError):
    """Malformed input document, optionally pointing at the offending item."""

    def __init__(self, message, index=None, item="edge"):
        self.index = index
        self.item = item
        if index is not None:
            message = f"{item} {index}: {message}"
        super().__init__(message)


class DimensionError(PmvcError, ValueError):
    """Color counts, coloring lengths or matrix shapes do not agree."""


class NotAPerfectMatchingError(PmvcError, ValueError):
    """An edge set was expected to be a perfect matching but is not."""


class DiagramError(PmvcError, ValueError):
    """Structural problem in a decision diagram (dangling node, bad order, overlap)."""


class InvalidDecompositionError(PmvcError, ValueError):
    """A (nice) tree decomposition does not fit the graph it is used with."""


class InvalidEmbeddingError(PmvcError, ValueError):
    """A rotation system is not a planar embedding of the graph."""


class IllegalMatchingError(PmvcError, ValueError):
    """A matching violates the constraint it is decoded against."""


class ResourceLimitError(PmvcError, RuntimeError):
    """An exhaustive routine was asked to go past its configured size."""


class InexactDivisionError(PmvcError, ArithmeticError):
    """A fraction-free elimination step left a remainder."""
