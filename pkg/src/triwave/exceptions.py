"""Exception types shared across the package."""


class TriwaveError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(TriwaveError, ValueError):
    """A family or model parameter violates its admissible domain."""


class DomainError(TriwaveError, ValueError):
    """An evaluation point lies outside the supported domain."""


class SingularParameterError(TriwaveError, ValueError):
    """A formula is singular at the requested parameter point."""


class ComplexWeightError(TriwaveError, ValueError):
    """The requested weight density is not real at this point."""


class RecursionBreakdownError(TriwaveError, RuntimeError):
    """A three-term recursion cannot be continued past some index."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or "recursion breakdown at index n=%d" % index)


class AccuracyError(TriwaveError, RuntimeError):
    """A numeric routine failed to reach its accuracy target."""

    def __init__(self, message, estimates=None):
        super().__init__(message)
        self.estimates = estimates


class UnsupportedStructureError(TriwaveError, ValueError):
    """The operation does not apply to this operator structure."""


class QuadratureOrderError(TriwaveError, ValueError):
    """The quadrature rule cannot integrate the requested degree exactly."""
