"""Exception types raised by cslheat."""


class CslHeatError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CslHeatError, ValueError):
    """An argument lies outside the domain of the operation."""


class DimensionError(CslHeatError, TypeError):
    """Quantities of incompatible dimension were combined or converted."""

    def __init__(self, got, expected):
        self.got = got
        self.expected = expected
        super().__init__(f"dimension mismatch: {got} is not {expected}")


class ConvergenceError(CslHeatError, RuntimeError):
    """An iterative numerical method failed to meet its tolerance.

    ``estimate`` carries the last error estimate (quadrature) and
    ``bracket`` the last bracket (root finding), when available.
    """

    def __init__(self, message, estimate=None, bracket=None):
        self.estimate = estimate
        self.bracket = bracket
        super().__init__(message)


class MaterialFileError(CslHeatError, ValueError):
    """A material definition file could not be parsed or validated."""

    def __init__(self, message, lineno=None, record=None, field=None):
        self.lineno = lineno
        self.record = record
        self.field = field
        where = []
        if lineno is not None:
            where.append(f"line {lineno}")
        if record is not None:
            where.append(f"material {record!r}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
