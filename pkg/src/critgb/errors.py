"""Exception types shared across the package."""


class CritgbError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(CritgbError, ValueError):
    """Operands live in different rings / incompatible shapes."""


class ShapeError(CritgbError, ValueError):
    """Invalid problem shape (n, p, degrees)."""


class ParseError(CritgbError, ValueError):
    """Malformed polynomial or instance text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + loc)


class RingTooWideError(CritgbError, ValueError):
    """Ring exceeds the packed-monomial limits of the elimination engine."""


class NonPolynomialError(CritgbError, ArithmeticError):
    """A series expected to terminate keeps producing nonzero coefficients."""


class DegenerateSeriesError(CritgbError, ArithmeticError):
    """Series expansion requested with a (1 - t^0) denominator factor."""


class InsufficientDegreeError(CritgbError, RuntimeError):
    """Macaulay degree too small: candidate basis fails the Buchberger criterion."""

    def __init__(self, degree, pair=None):
        self.degree = degree
        self.pair = pair
        msg = f"no Groebner basis inside the degree-{degree} Macaulay matrix"
        if pair is not None:
            msg += f" (S-polynomial of pair {pair} has nonzero normal form)"
        super().__init__(msg)


class GenericityError(CritgbError, RuntimeError):
    """Instance behaves non-generically; caller should resample."""


class PositiveDimensionError(CritgbError, RuntimeError):
    """Staircase enumeration exceeded its cap: ideal is not 0-dimensional."""
