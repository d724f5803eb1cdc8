"""Exception hierarchy.

``InputError`` subclasses signal bad user data (CLI exit code 2),
``VerificationError`` a failed numerical check of the minimality theorem
(exit code 3); everything else derived from ``GeometryError`` is an
internal numerical failure (exit code 4).
"""


class GeometryError(Exception):
    """Base class for all errors raised by :mod:`hyperpolygon`."""


class InputError(GeometryError, ValueError):
    """The caller supplied data outside an operation's domain."""


class InvalidInput(InputError):
    pass


class DegenerateInput(InputError):
    pass


class NotOnManifold(InputError):
    """Edge lengths do not close up into a polygon."""


class NotConvex(InputError):
    """A closed path that is not a convex embedded polygon."""


class PreconditionViolation(InputError):
    pass


class ConvexityViolation(InputError):
    pass


class BranchAmbiguity(GeometryError):
    """Matrix logarithm requested for a near half-turn."""


class DegenerateConfiguration(GeometryError):
    pass


class ProjectionFailed(GeometryError):
    pass


class LeftDomain(GeometryError):
    """Newton projection drove an edge length to zero or below."""


class SamplingFailed(GeometryError):
    pass


class NoInscribedCircle(GeometryError):
    pass


class NotCoplanar(GeometryError):
    pass


class HitBoundary(GeometryError):
    """Descent stalled against the boundary of the polygon space.

    Attributes
    ----------
    edges : list of int
        Indices of the edges whose lengths reached the clipping bound.
    trace : OptimizerTrace
        Iterates collected before stalling.
    """

    def __init__(self, message, edges=(), trace=None):
        super().__init__(message)
        self.edges = list(edges)
        self.trace = trace


class VerificationError(GeometryError):
    pass


class TheoremViolation(VerificationError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
