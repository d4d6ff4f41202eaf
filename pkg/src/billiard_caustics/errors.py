"""Exception hierarchy shared by all modules."""


class CausticError(ValueError):
    """Base class for geometric failures."""


class NoIntersection(CausticError):
    """The ray misses the open interior of the table.

    ``step`` is the 1-based reflection that failed inside ``reflect_n``; ``s``
    the family parameter of the offending sample when known.
    """

    def __init__(self, message, step=None, s=None):
        super().__init__(message)
        self.step = step
        self.s = s


class Tangential(NoIntersection):
    """The ray grazes the boundary."""


class FocusPoint(CausticError):
    """The source sits on a focus of the table."""


class DegenerateSource(FocusPoint):
    """The caustic collapses to a point (focal source)."""


class InsidePoint(CausticError):
    """An exterior source was required."""


class OutsidePoint(CausticError):
    """An interior source was required."""


class NotTangent(CausticError):
    """The ray is not tangent to the requested confocal conic."""


class DegeneratePencil(CausticError):
    """A pure pencil has no cusps: its cusp function vanishes identically."""


class UnresolvedCrossing(CausticError):
    """The direction derivative touches zero without changing sign."""


class UnresolvedRoot(CausticError):
    """The cusp function touches zero without changing sign."""


class ZeroDistance(CausticError):
    """Object placed on the mirror itself."""
