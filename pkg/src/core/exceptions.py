"""
Exception hierarchy for homology census computations.

Every exception carries the process exit code the command-line front
door maps it to.
"""


class CensusError(Exception):
    """Base class for all census errors."""
    exit_code = 1


class ValidationError(CensusError):
    """Invalid input, configuration or argument combination."""
    exit_code = 2


class NotPrime(ValidationError):
    """Characteristic is not a prime number."""
    pass


class NotPrimePower(ValidationError):
    """Field order is not a prime power."""
    pass


class DegreeOutOfRange(ValidationError):
    """Extension degree or field order outside the supported caps."""
    pass


class FieldMismatch(ValidationError):
    """Operands live over different fields."""
    pass


class DimensionMismatch(ValidationError):
    """Matrix shapes are incompatible."""
    pass


class ParityMismatch(ValidationError):
    """Homology dimension r and space dimension n differ in parity."""
    pass


class NotADifferential(ValidationError):
    """Matrix does not square to zero."""
    pass


class SingularMatrix(ValidationError):
    """Matrix has no inverse."""
    pass


class DivisionByZero(ValidationError, ZeroDivisionError):
    """Inverse of the zero field element requested."""
    pass


class ReducibleModulus(ValidationError):
    """Field modulus is not a monic irreducible polynomial of degree e."""
    pass


class TooLarge(CensusError):
    """Exhaustive scan exceeds the feasibility guard."""
    exit_code = 3


class InvariantBreach(CensusError):
    """An exact identity that must always hold was violated."""
    exit_code = 4


class RngFailure(CensusError):
    """Rejection sampling exceeded its iteration cap."""
    exit_code = 4
