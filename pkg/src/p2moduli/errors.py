"""Exception hierarchy.

The CLI prints ``type(err).__name__`` on the diagnostic stream, so class
names double as stable error identifiers.
"""


class P2ModuliError(Exception):
    """Base class for mathematical errors raised by this package."""


class FieldMismatch(P2ModuliError, ValueError):
    pass


class ShapeMismatch(P2ModuliError, ValueError):
    pass


class RelationViolated(P2ModuliError, ValueError):
    def __init__(self, i, j, message=None):
        self.pair = (i, j)
        super().__init__(message or f"relation fails at arrow pair ({i}, {j})")


class NoValidTwist(P2ModuliError):
    pass


class DimensionInfeasible(P2ModuliError, ValueError):
    pass


class GenericityFailure(P2ModuliError):
    pass


class NonPositiveEuler(P2ModuliError):
    pass


class IterationCap(P2ModuliError, RuntimeError):
    pass


class NegativeCount(P2ModuliError):
    pass


class NonDivisible(P2ModuliError, ValueError):
    pass
