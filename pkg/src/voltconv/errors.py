"""Exception hierarchy shared by all voltconv modules."""


class VoltconvError(Exception):
    """Base class for all package errors."""


class DomainError(VoltconvError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class AccuracyError(VoltconvError):
    """A quadrature or iterative evaluation failed to reach the requested
    tolerance.  Carries the best estimate achieved so far."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ConvergenceError(VoltconvError):
    """A fixed-point iteration failed to converge.  Carries the last iterate
    and the defect it achieved."""

    def __init__(self, message, iterate=None, defect=None):
        super().__init__(message)
        self.iterate = iterate
        self.defect = defect


class SingularStepError(VoltconvError):
    """The diagonal factor of a forward-substitution step is numerically
    singular."""


class UnboundedNormError(VoltconvError):
    """A Luxemburg functional stayed above 1 for every scale up to the
    overflow cap."""


class UsageError(VoltconvError, ValueError):
    """Mismatched grids or otherwise inconsistent arguments."""
