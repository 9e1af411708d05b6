"""
Exceptions raised by fincat. Every message names the offending object, arrow
or chain so that command line reports can be acted upon directly.
"""


class FincatError(Exception):
    """
    Base class of every error raised by this package.
    """


class ValidationError(FincatError, ValueError):
    """
    Raised when input data does not describe what it claims to describe.
    """


class MissingComposite(ValidationError):
    pass


class AssociativityViolation(ValidationError):
    pass


class UnitViolation(ValidationError):
    pass


class DanglingEndpoint(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class DomainMismatch(ValidationError):
    pass


class FunctorViolation(ValidationError):
    """
    A functor (or natural transformation) fails endpoint, identity,
    composition or naturality preservation.
    """


class NotASubcategory(ValidationError):
    pass


class SizeBudgetExceeded(FincatError):
    """
    A construction or a search ran past its configured
    :class:`~fincat.budget.Budget`. This is never a mathematical answer.
    """


BudgetExceeded = SizeBudgetExceeded


class FibrationError(FincatError):
    pass


class NoLift(FibrationError):
    pass


class NonUniqueFiller(FibrationError):
    pass


class NotAFibration(FibrationError):
    pass


class EndpointMismatch(FibrationError):
    pass


class EquivalenceFailure(FibrationError):
    pass


class NotBiFibration(FincatError):
    pass


class BaseNotConnected(FincatError):
    pass


class BasepointMismatch(FincatError):
    pass


class FiberNotPreserved(FincatError):
    pass


class InequalityViolation(FincatError):
    """
    Both sides of a checked inequality were computed independently and the
    inequality failed. Carries the full report.
    """
    def __init__(self, report):
        super(InequalityViolation, self).__init__(
            "inequality violated: {}".format(report.describe()))
        self.report = report


class ParseError(FincatError):
    """
    A file could not be read or does not match any known schema.
    """
    def __init__(self, message, path=None, line=None, field=None):
        location = []
        if path is not None:
            location.append(str(path))
        if line is not None:
            location.append("line {}".format(line))
        if field is not None:
            location.append("field '{}'".format(field))
        if location:
            message = "{}: {}".format(", ".join(location), message)
        super(ParseError, self).__init__(message)
        self.path = path
        self.line = line
        self.field = field
