"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 1);
``MathError`` subclasses signal a violated mathematical precondition
(CLI exit code 2).
"""


class ProjStructError(Exception):
    """Base class for all package errors."""


class InputError(ProjStructError, ValueError):
    pass


class MathError(ProjStructError):
    pass


class SingularMatrix(InputError):
    pass


class IllConditioned(MathError):
    pass


class TrivialElement(MathError):
    pass


class RelationViolated(MathError):
    pass


class NotInvariantFiber(MathError):
    pass


class CenterNotOnSection(MathError):
    pass


class InvariantSection(MathError):
    pass


class NonPositiveCoverOrder(MathError):
    pass


class IntegrationDivergence(MathError):
    pass


class TooFewSteps(InputError):
    pass


class UnsupportedExponent(MathError):
    pass


class DegenerateStrip(MathError):
    pass


class ZeroAlpha(MathError):
    pass


class ZeroVector(MathError):
    pass


class InvalidTwins(MathError):
    pass


class NotMultipleOf2Pi(MathError):
    pass


class NoTwins(MathError):
    pass


class EndpointNotRegular(MathError):
    pass


class UndecomposableChart(MathError):
    pass


class DerivativeVanishes(MathError):
    pass


class StepUnderflow(MathError):
    pass


class SingularOnPath(MathError):
    pass
