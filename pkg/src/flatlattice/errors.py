"""Exception hierarchy shared by all modules."""


class FlatLatticeError(Exception):
    """Base class for every error raised by this package."""


class InputError(FlatLatticeError):
    """Malformed or inconsistent user input (maps to CLI exit code 2)."""


class InvalidParameters(InputError):
    pass


class GroundSetTooLarge(InputError):
    pass


class NotALattice(InputError):
    pass


class PartitionAxiomFails(InputError):
    pass


class ExchangeAxiomFails(InputError):
    pass


class Loops(InputError):
    pass


class RankTooSmall(InputError):
    pass


class NotAFlat(InputError):
    pass


class NonGenericWeight(InputError):
    pass


class NonGenericHalfspace(NonGenericWeight):
    pass


class NotComparable(InputError):
    pass


class FaceNotInComplex(InputError):
    pass


class NotASubcomplex(InputError):
    pass


class VoidComplex(InputError):
    pass


class NotPure(InputError):
    pass


class NotAPermutation(InputError):
    pass


class NotASubchain(InputError):
    pass


class TooLarge(InputError):
    pass


class CertificateError(FlatLatticeError):
    """A computed normal-form certificate failed re-verification."""


class TOutOfRangeWarning(UserWarning):
    """Filtration parameter violates t <= min(0, w.[n]); allowed but flagged."""


class TOutOfRange(InputError):
    """Filtration parameter violates t <= min(0, w.[n]) where that is required."""


class ParseError(InputError):
    """Input file or argument could not be parsed."""
