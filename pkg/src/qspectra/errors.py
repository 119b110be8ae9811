"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for violated preconditions, 3 for numerical failures.
"""


class QSpectraError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class PreconditionError(QSpectraError):
    """An input violates the documented precondition of an operation."""

    exit_code = 2


class NumericalFailure(QSpectraError):
    """A computation lost too much accuracy to be trusted."""

    exit_code = 3


class DivisionByZero(PreconditionError, ZeroDivisionError):
    pass


class DimensionMismatch(PreconditionError, ValueError):
    pass


class NotInRepresentationImage(NumericalFailure):
    pass


class Singular(PreconditionError):
    pass


class NotPositive(PreconditionError):
    pass


class NotOrthonormal(PreconditionError):
    pass


class NotLeftScalarMultiplication(PreconditionError):
    pass


class NotNormal(PreconditionError):
    pass


class NotAntiUnitary(PreconditionError):
    pass


class DoesNotCommuteWithJ(PreconditionError):
    pass


class BadAuxiliaryUnit(PreconditionError):
    pass


class ClusterAmbiguity(NumericalFailure):
    pass


class MissingSupportPoint(PreconditionError):
    pass


class NotInjective(PreconditionError):
    pass


class NotAssociatedPair(PreconditionError):
    pass


class NotEigenvalue(PreconditionError):
    pass


class NotUnimodular(PreconditionError):
    pass


class NotContractive(PreconditionError):
    pass


class SupportOnBoundary(NumericalFailure):
    pass
