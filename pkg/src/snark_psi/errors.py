class SnarkPsiError(Exception):
    """Base class for every error raised by snark-psi."""


class GraphError(SnarkPsiError, ValueError):
    pass


class LoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class UnknownEdgeError(GraphError):
    pass


class ParallelEdgeError(GraphError):
    pass


class NonCubicError(GraphError):
    pass


class AcyclicGraphError(GraphError):
    pass


class ColoringError(SnarkPsiError):
    pass


class ValenceError(ColoringError, ValueError):
    pass


class ColorableGraphError(ColoringError):
    """psi is only defined for non-colourable cubic graphs."""


class DivisibilityError(ColoringError, AssertionError):
    """A colouring count that must be a multiple of 18 was not.

    Valid inputs can never trigger this; it points at a bug in the counter.
    """


class CountOverflowError(ColoringError, OverflowError):
    pass


class ChainColorError(ColoringError, ValueError):
    pass


class StarPatternError(ColoringError):
    pass


class ConnectivityError(SnarkPsiError):
    pass


class NotACutSetError(ConnectivityError, ValueError):
    pass


class BudgetExceededError(ConnectivityError):
    pass


class VertexSetError(ConnectivityError, ValueError):
    pass


class OverlappingSetsError(VertexSetError):
    pass


class ConstructionError(SnarkPsiError):
    pass


class InvalidSpecError(ConstructionError, ValueError):
    pass


class SynthesisError(SnarkPsiError):
    pass


class TargetError(SynthesisError, ValueError):
    pass


class VerificationMismatchError(SynthesisError):
    """A brute-force psi disagreed with the predicted value."""


class SuiteError(SynthesisError, ValueError):
    pass


class Graph6Error(SnarkPsiError, ValueError):
    pass


class EdgeSpecError(SnarkPsiError, ValueError):
    pass
