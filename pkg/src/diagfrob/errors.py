"""Exception hierarchy shared by every module of the package."""


class DiagFrobError(Exception):
    """Base class for all errors raised by diagfrob."""


class ParseError(DiagFrobError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class RankDeficient(DiagFrobError):
    pass


class Singular(DiagFrobError):
    pass


class TooLarge(DiagFrobError):
    pass


class NotPrimitive(DiagFrobError):
    pass


class NoBase(DiagFrobError):
    pass


class BudgetExceeded(DiagFrobError):
    pass


class Unbounded(DiagFrobError):
    """The maximum of the uniform slack is +infinity.

    ``ray`` is a direction d with A d <= -1 componentwise, ``point`` a
    feasible starting point of the auxiliary LP.
    """

    def __init__(self, message, ray, point=None):
        super().__init__(message)
        self.ray = ray
        self.point = point


class UnboundedPolytope(DiagFrobError):
    pass


class Infeasible(DiagFrobError):
    """Certified negative outcome: the system has no integer solution."""

    def __init__(self, message, reason=None):
        super().__init__(message)
        self.reason = reason or message


class Degenerate(DiagFrobError):
    """A standard system with n == k; ``solution`` is its unique solution."""

    def __init__(self, message, solution):
        super().__init__(message)
        self.solution = solution


class NotNormalized(DiagFrobError):
    pass


class PreconditionFailed(DiagFrobError):
    """The Gomory slack condition fails at ``row``.

    ``result`` carries the (unverified) construction so that callers can
    still inspect it.
    """

    def __init__(self, message, row=None, result=None):
        super().__init__(message)
        self.row = row
        self.result = result


class NoSlackPoint(DiagFrobError):
    """No real point has the uniform slack the pipeline needs."""

    def __init__(self, message, required, available):
        super().__init__(message)
        self.required = required
        self.available = available


class PipelineFailed(DiagFrobError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate
