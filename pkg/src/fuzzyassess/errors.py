"""Exception hierarchy.

Every error raised for bad input derives from :class:`AssessmentError`, so
callers (the CLI in particular) can separate user mistakes from bugs.
"""

from __future__ import annotations


class AssessmentError(ValueError):
    """Base class for all input and contract errors."""


class InvalidScaleSize(AssessmentError):
    pass


class InvalidOverlap(AssessmentError):
    pass


class OverlapNotAllowed(AssessmentError):
    pass


class ScaleMismatch(AssessmentError):
    pass


class NormalizationError(AssessmentError):
    pass


class TooFewGroups(AssessmentError):
    pass


class UnsupportedShape(AssessmentError):
    pass


class OverlappingRegions(AssessmentError):
    pass


class EmptyGraph(AssessmentError):
    pass


class BoundaryNotAllowed(AssessmentError):
    """Ambiguous (boundary) scores were given for a model without overlap."""


class ParseError(AssessmentError):
    """Malformed dataset input. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGrade(ParseError):
    pass


class NonAdjacentBoundary(ParseError):
    pass


class NegativeCount(ParseError):
    pass


class DuplicateCell(ParseError):
    pass
