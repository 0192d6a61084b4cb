"""Exception types raised by the library's mathematical preconditions."""


class CStarError(ValueError):
    """Base class for precondition failures in cstarkit operations."""


class DimensionMismatch(CStarError):
    pass


class NotHermitian(CStarError):
    pass


class Singular(CStarError):
    pass


class NoConvergence(CStarError):
    pass


class NotInAlgebra(CStarError):
    pass


class NotSubspace(CStarError):
    pass


class NotTwoSided(CStarError):
    pass


class NotProper(CStarError):
    pass


class BudgetExceeded(CStarError):
    pass


class NotRealAlgebra(CStarError):
    pass


class SingularResolvent(CStarError):
    pass


class Overflow(CStarError):
    pass


class NotContractive(CStarError):
    pass


class NotPositive(CStarError):
    pass


class NotNormal(CStarError):
    pass


class NonAbelian(CStarError):
    pass


class ComplexFieldRequired(CStarError):
    pass


class NotStarClosed(CStarError):
    pass


class WitnessNotFound(CStarError):
    pass


class AlgebraMismatch(CStarError):
    pass


class NotUnitVector(CStarError):
    pass


class NotUnital(CStarError):
    pass


class LevelOutOfRange(CStarError):
    pass


class MalformedInput(ValueError):
    """Bad input files or argument values on the CLI path (exit code 2)."""
