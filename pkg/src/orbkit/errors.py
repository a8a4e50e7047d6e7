"""Exception hierarchy shared by all orbkit modules."""


class OrbkitError(Exception):
    """Base class for every error raised by orbkit."""


# scalars
class MixedFields(OrbkitError):
    pass


class NoSquareRootInField(OrbkitError):
    pass


# frobenius / bimodules
class NotAssociative(OrbkitError):
    pass


class NotFrobenius(OrbkitError):
    """Raised when the pairing ``eps(e_i e_j)`` is singular.

    ``witness`` holds a nonzero kernel vector of the pairing matrix.
    """

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NotSeparable(OrbkitError):
    pass


class NotSplitSemisimple(OrbkitError):
    pass


class MiddleAlgebraMismatch(OrbkitError):
    pass


class NotABimodule(OrbkitError):
    pass


class NotAnOrbifoldDatum(OrbkitError):
    pass


class NoIsomorphismFound(OrbkitError):
    pass


# fusion categories
class ShapeError(OrbkitError, ValueError):
    pass


class DegenerateTracePairing(OrbkitError):
    pass


class NotAnEquivalence(OrbkitError):
    pass


# state sums
class NotClosed(OrbkitError):
    pass


class InvalidMove(OrbkitError):
    pass


class MissingEulerDatum(OrbkitError):
    pass


class NotOrientable(OrbkitError):
    pass


class LabelAdjacencyViolation(OrbkitError):
    pass


class TransversalityViolation(OrbkitError):
    pass


# cli / fixtures
class UnknownCommand(OrbkitError):
    pass


class FixtureNotFound(OrbkitError):
    pass


class SchemaVersionMismatch(OrbkitError):
    pass
