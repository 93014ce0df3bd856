"""Exception types raised across the package."""


class EdgeWalkError(Exception):
    """Base class for every error raised by this package."""


class TooSmall(EdgeWalkError):
    """The host-graph parameter n is below the minimum of 2."""


class InvalidVertex(EdgeWalkError):
    """A vertex label lies outside {0, ..., n}."""


class LoopEdge(EdgeWalkError):
    """An edge joins a vertex to itself."""


class EmptySubgraph(EdgeWalkError):
    """No marked edge was supplied."""


class InvalidArc(EdgeWalkError):
    """An ordered pair is not an arc of the host graph."""


class InvalidEdge(EdgeWalkError):
    """An unordered pair is not an edge of the host graph."""


class EmptyComplement(EdgeWalkError):
    """Every edge of the host graph is marked; there is nothing to walk on."""


class TooLarge(EdgeWalkError):
    """The instance is too large for a dense construction."""


class DimensionMismatch(EdgeWalkError):
    """A state vector does not match the arc set of the instance."""


class NotSymmetric(EdgeWalkError):
    """A matrix expected to be symmetric is not."""


class NoConvergence(EdgeWalkError):
    """An eigenvalue computation failed to converge."""


class DegenerateSpectrum(EdgeWalkError):
    """The top eigenvalue of the vertex matrix equals 1, which happens exactly
    when the marked subgraph is a spanning complete bipartite graph; the
    rotation angle is then 0 and the quantum searching time is undefined."""


class SolverFailure(EdgeWalkError):
    """A linear solve did not reach the requested residual."""


class StepCapExceeded(EdgeWalkError):
    """A Monte-Carlo trial exceeded the per-trial step cap."""


class ZeroTrials(EdgeWalkError):
    """A Monte-Carlo estimate was requested with zero trials."""
