"""Shared exception types."""


class HomolabError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HomolabError):
    """Semantically invalid input (bad characteristic, bad ideal, ...)."""


class ParseError(HomolabError):
    """Malformed input text."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LinearFormsPresent(ValidationError):
    """The ideal contains a linear form; input must be pre-normalized."""


class NonHomogeneousIdeal(ValidationError):
    """An ideal generator is not homogeneous."""


class NotArtinian(ValidationError):
    """The quotient is infinite-dimensional."""


class InconsistentSystem(HomolabError):
    """A linear system has no solution."""


class ZeroModule(HomolabError):
    """Operation undefined on the zero module."""


class CodimNotThree(HomolabError):
    """The homology-algebra classification needs codimension exactly three."""
