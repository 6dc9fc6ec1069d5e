"""Exception hierarchy shared by every stage of the pipeline."""


class HomflyError(Exception):
    """Base class for all errors raised by this package."""


class DiagramError(HomflyError, ValueError):
    """A link diagram is malformed or inconsistent."""


class MalformedSyntax(DiagramError):
    pass


class NonQuadrivalent(DiagramError):
    pass


class OrientationConflict(DiagramError):
    pass


class InvalidDiagram(DiagramError):
    pass


class UnknownCrossing(DiagramError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BadGeneratorIndex(DiagramError):
    pass


class NegativeDeltaExponent(HomflyError, ArithmeticError):
    pass


class DecompositionError(HomflyError):
    """A tree decomposition violates a structural requirement."""


class PipelineError(HomflyError, AssertionError):
    """An internal invariant of the dynamic program failed.

    These never indicate bad input; they mean the decomposition or the
    bag processing is wrong, and are raised instead of returning a
    polynomial that might be incorrect.
    """


class LeafHasInternalArc(PipelineError):
    pass


class IntroduceSeesForgottenNeighbor(PipelineError):
    pass


class WidthBudgetExceeded(HomflyError):
    def __init__(self, message, width=None, table_size=None):
        super().__init__(message)
        self.width = width
        self.table_size = table_size
