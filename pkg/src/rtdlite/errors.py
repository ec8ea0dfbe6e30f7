"""Exception types raised by rtdlite."""


class RtdliteError(Exception):
    """Base class for all rtdlite errors."""


class InvalidMatrixError(RtdliteError, ValueError):
    """Raised when a weight matrix violates the input contract."""


class DimensionMismatchError(RtdliteError, ValueError):
    """Raised when two inputs do not share the same vertex count."""


class DisconnectedInputError(RtdliteError):
    """Raised when a graph has no finite spanning tree.

    ``labels`` holds the component label of every vertex of the offending
    graph, ``graph`` names it ("A" or "C").
    """

    def __init__(self, message, labels=None, graph=None):
        super().__init__(message)
        self.labels = labels
        self.graph = graph
