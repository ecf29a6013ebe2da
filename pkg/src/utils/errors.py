"""
Exceptions raised by the toolkit.

Everything derives from ToolkitError so the CLI can turn any failure into a
structured report; input problems also derive from ValueError.
"""


class ToolkitError(Exception):
    pass


class DimensionMismatchError(ToolkitError, ValueError):
    pass


class NotSquareError(ToolkitError, ValueError):
    pass


class NotSymmetricError(ToolkitError, ValueError):
    pass


class NoSolutionError(ToolkitError, ValueError):
    pass


class NotLagrangianError(ToolkitError, ValueError):
    pass


class NotSymplecticError(ToolkitError, ValueError):
    pass


class NonPrimitiveClassError(ToolkitError, ValueError):
    pass


class ContextMismatchError(ToolkitError, ValueError):
    pass


class RingMismatchError(ToolkitError, ValueError):
    pass


class ColorOutOfRangeError(ToolkitError, ValueError):
    pass


class ReductionError(ToolkitError, ValueError):
    pass


class CoefficientError(ToolkitError, ValueError):
    pass


class WordSyntaxError(ToolkitError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class InvariantViolation(ToolkitError, AssertionError):
    """An identity that the mathematics guarantees did not hold."""
