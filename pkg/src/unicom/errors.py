"""Exception types shared across the package.

Every error raised by unicom derives from :class:`UnicomError`, so callers
can catch one base class. The CLI maps these onto stable exit codes
(input/parse problems -> 2, configuration problems -> 3, internal
invariant violations -> 4).
"""

from __future__ import annotations


class UnicomError(Exception):
    """Base class for all errors raised by this package."""


class GraphConstructionError(UnicomError):
    """Invalid graph input (weights, duplicates, self-loops, emptiness)."""


class NonPositiveWeightError(GraphConstructionError):
    pass


class DuplicateEdgeError(GraphConstructionError):
    pass


class DuplicateEntryError(GraphConstructionError):
    pass


class EmptyInputError(GraphConstructionError):
    pass


class EmptyGraphError(GraphConstructionError):
    pass


class SelfLoopError(GraphConstructionError):
    pass


class UnknownLabelError(UnicomError):
    pass


class UnknownNodeError(UnicomError):
    pass


class UnknownCommunityError(UnicomError):
    pass


class PartitionMismatchError(UnicomError):
    """Partition does not cover the graph it is scored against."""


class WrongOriginError(UnicomError):
    """Clone-consistency check applied to a result without clone pairs."""


class EmptyCommunityError(UnicomError):
    """A community has no member on the side a computation needs."""


class InconsistentDimensionsError(UnicomError):
    """Overlap matrix, partition and label map disagree on shapes."""


class CommunitySpaceMismatchError(UnicomError):
    """Dual views must share one community id space."""


class ParseError(UnicomError):
    """Malformed textual input.

    Parameters
    ----------
    message : str
        Human-readable description.
    line : int, optional
        1-based line number in the source text.
    column : int, optional
        1-based column (or CSV field) number.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)


class RaggedRowError(ParseError):
    pass


class NonNumericCellError(ParseError):
    pass


class NegativeWeightError(ParseError):
    pass


class ConfigError(UnicomError):
    """Invalid run configuration; the CLI exits 3 on these."""


class InternalInvariantError(UnicomError):
    """A guaranteed property failed at runtime; the CLI exits 4 on these."""


class NonContiguousIdsWarning(UserWarning):
    """Partition file carried gaps in its community ids; ids were renumbered."""
