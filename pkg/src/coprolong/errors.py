"""Exception hierarchy.

Every failure raised by the library derives from :class:`AlgebraError`, so the
CLI can map the whole family to exit code 2.  Errors carry the offending data
(a triple, a pair, an element) as attributes as well as in the message.
"""


class AlgebraError(ValueError):
    """Base class for invalid algebraic input."""

    def __init__(self, message, **witness):
        super().__init__(message)
        self.witness = witness


# group-core
class NotClosed(AlgebraError):
    pass


class NoIdentityAtZero(AlgebraError):
    pass


class NotAssociative(AlgebraError):
    pass


class NoInverse(AlgebraError):
    pass


class NotHomomorphism(AlgebraError):
    pass


class IdentityNotPreserved(AlgebraError):
    pass


# zlattice
class NotAbelian(AlgebraError):
    pass


class DimensionMismatch(AlgebraError):
    pass


# cohomology
class InvalidModule(AlgebraError):
    pass


class DegreeUnsupported(AlgebraError):
    pass


class NotACocycle(AlgebraError):
    pass


class ActionMismatch(AlgebraError):
    pass


# extensions
class InvalidExtension(AlgebraError):
    pass


class ValueOutsideKernel(AlgebraError):
    pass


class IllDefinedAction(AlgebraError):
    pass


# co-prolongations
class GammaNotSurjective(AlgebraError):
    pass


class ActionDoesNotFactor(AlgebraError):
    pass


class RestrictionNotBijective(AlgebraError):
    pass


class NotNormal(AlgebraError):
    pass


class NotDirectProduct(AlgebraError):
    pass


class WitnessInvalid(AlgebraError):
    pass


class NotSplit(AlgebraError):
    pass


class PreconditionFailed(AlgebraError):
    pass


class ThetaIllDefined(AlgebraError):
    pass


# oracle
class GuardExceeded(AlgebraError):
    pass
