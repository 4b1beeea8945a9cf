"""Exception taxonomy shared by the whole package."""


class GraphError(Exception):
    """Base class for every error raised by graphcat."""


class ParseError(GraphError):
    """Malformed text input; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


# -- graph construction -------------------------------------------------

class InvolutionFixedPoint(GraphError):
    pass


class ArcInTwoNeighborhoods(GraphError):
    pass


class BoundaryViolation(GraphError):
    pass


class UnknownVertex(GraphError):
    pass


class NodelessLoopInSafeMode(GraphError):
    pass


class NodelessLoopInCoreMode(GraphError):
    pass


class DisconnectedInput(GraphError):
    pass


class NotInternalEdge(GraphError):
    pass


# -- maps ----------------------------------------------------------------

class SourceTargetMismatch(GraphError):
    pass


class ModeMismatch(GraphError):
    pass


class NotInvolutive(GraphError):
    pass


class NoEmbeddingWithBoundary(GraphError):
    pass


class VertexOverlap(GraphError):
    pass


class CollapseViolation(GraphError):
    pass


class EdgeFlagShapeError(GraphError):
    pass


class InvalidBoundaryMatch(GraphError):
    pass


class BudgetExceeded(GraphError):
    pass


class NotInSubcategory(GraphError):
    pass


# -- presheaves ----------------------------------------------------------

class MissingCorpusObject(GraphError):
    pass


class MapNotInCorpusSpan(GraphError):
    pass


class CorpusTooSmall(GraphError):
    pass


# -- stable structures ---------------------------------------------------

class ClosureViolation(GraphError):
    pass
