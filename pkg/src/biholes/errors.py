"""Exception types shared across the package."""


class BiholesError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(BiholesError):
    """A vertex index does not fit the graph it was used with."""


class EmptySide(BiholesError):
    """A per-side quantity was requested for a side with no vertices."""


class UnbalancedGraph(BiholesError):
    """The operation requires left_count == right_count."""


class EmptyGraph(BiholesError):
    """Reserved for strict handling of the 0 x 0 graph.

    The bound operations themselves do not raise this: they return 0 on the
    empty graph by convention so that reports and traces stay total.  The
    class is kept public for callers that want to opt into strict checks.
    """


class MalformedHeader(BiholesError):
    """The edge-list header line is missing or is not two integers."""


class MalformedEdgeLine(BiholesError):
    """An edge line is not two integers.  Carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(message)
        self.lineno = lineno


class InvalidProbability(BiholesError):
    """An edge probability was missing or outside [0, 1]."""


class InvalidSize(BiholesError):
    """A requested graph size is not supported by the chosen model."""


class DegreeTooSmall(BiholesError):
    """The logarithmic reference bound needs average degree > 1."""


class NoEdges(BiholesError):
    """Pair selection was asked for on a graph with no edges."""


class NegativeD(BiholesError):
    """The degeneracy parameter d must be >= 0."""


class InstanceTooLarge(BiholesError):
    """The instance exceeds the configured brute-force oracle limits."""


class TraceMismatch(BiholesError):
    """A recorded peeling step could not be replayed on the stated graph."""
