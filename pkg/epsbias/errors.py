"""Exception hierarchy for the epsbias laboratory.

Errors that describe a bad argument also subclass ValueError, so callers
that only know about ValueError keep working.
"""


class EpsBiasError(Exception):
    """Base class for every error raised by the laboratory."""


# ----------------------------------------------------------------------
# Finite fields
# ----------------------------------------------------------------------

class CompositeCharacteristic(EpsBiasError, ValueError):
    """The requested characteristic (or field order) is not a prime (power)."""


class ReducibleModulus(EpsBiasError, ValueError):
    """The modulus is not a monic irreducible polynomial of the right degree."""


class FieldMismatch(EpsBiasError, ValueError):
    """Operands belong to different fields."""


class DivisionByZero(EpsBiasError, ZeroDivisionError):
    """Division by the zero element of a field."""


# ----------------------------------------------------------------------
# Codes and transforms
# ----------------------------------------------------------------------

class EnumerationCapExceeded(EpsBiasError):
    """Exhaustive enumeration would examine more words than allowed.

    Attributes:
        required: number of words the enumeration needs
        cap: the configured enumeration cap
    """

    def __init__(self, required: int, cap: int):
        super().__init__(
            f"enumeration of {required} words exceeds the cap of {cap} "
            "(raise EPSBIAS_MAX_ENUM or pass a larger cap)")
        self.required = required
        self.cap = cap


class ZeroCode(EpsBiasError, ValueError):
    """An operation needs a code of dimension at least one."""


class IndexOutOfRange(EpsBiasError, ValueError):
    """An index set refers to positions outside [0, n)."""


class SizeTooLarge(EpsBiasError, ValueError):
    """A requested subset size is not smaller than the ambient length."""


class ExpansionNotAchieved(EpsBiasError):
    """No generated graph met the spectral threshold."""


class WalkStalled(EpsBiasError):
    """A random walk did not collect enough distinct vertices in time."""


class BadParameters(EpsBiasError, ValueError):
    """Parameters violate the constraints of a code family."""


class DuplicatePoints(EpsBiasError, ValueError):
    """Reed-Solomon evaluation points are not distinct."""


class TooLong(EpsBiasError, ValueError):
    """Reed-Solomon length exceeds the field size."""


class RankFailure(EpsBiasError):
    """Random generator sampling never reached full row rank."""


# ----------------------------------------------------------------------
# Bounds and planners
# ----------------------------------------------------------------------

class DomainError(EpsBiasError, ValueError):
    """An argument lies outside the domain of a closed-form quantity."""


class OddMoment(EpsBiasError, ValueError):
    """Moment bounds are only defined for even moments."""


class InfeasibleParameters(EpsBiasError, ValueError):
    """A planner precondition failed.

    Attributes:
        condition: short name of the failed precondition
        lhs: left-hand side of the failed inequality, when numeric
        rhs: right-hand side of the failed inequality, when numeric
    """

    def __init__(self, condition: str, detail: str = "",
                 lhs: float | None = None, rhs: float | None = None):
        message = f"infeasible: {condition}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)
        self.condition = condition
        self.lhs = lhs
        self.rhs = rhs
        self.preconditions = ()


class InvariantViolation(EpsBiasError):
    """A claim proved for every outcome failed on an actual outcome."""


# ----------------------------------------------------------------------
# File formats
# ----------------------------------------------------------------------

class ParseError(EpsBiasError, ValueError):
    """A file does not follow its documented text format.

    Attributes:
        path: file being parsed (may be None for in-memory text)
        line: 1-based line number of the problem
        column: 1-based column (token position) of the problem
    """

    def __init__(self, message: str, path=None, line: int = 0,
                 column: int = 0):
        location = f"{path or '<text>'}:{line}:{column}"
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line = line
        self.column = column


class RankMismatch(EpsBiasError, ValueError):
    """A stored generator matrix does not have the declared rank."""
