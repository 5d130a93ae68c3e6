"""Exception types shared across modules."""


class ShimliftError(Exception):
    pass


class InvalidInstance(ShimliftError, ValueError):
    """An instance violates one of the standing assumptions."""

    def __init__(self, assumption, detail=""):
        self.assumption = assumption
        super().__init__(f"{assumption}: {detail}" if detail else assumption)


class AccuracyError(ShimliftError):
    pass


class NotAnOrder(ShimliftError):
    pass


class BudgetExceeded(ShimliftError):
    pass


class NoneFound(ShimliftError):
    pass


class InconsistentLocalData(ShimliftError):
    pass


class EmptySolutionSpace(ShimliftError):
    pass


class DomainError(ShimliftError, ValueError):
    pass


class OnCycle(ShimliftError):
    pass


class QuadratureFailure(ShimliftError):
    pass


class TailNotCertified(ShimliftError):
    pass


class WindowExceeded(ShimliftError):
    pass
