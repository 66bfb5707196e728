"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit errors."""


class FieldEvaluationError(ToolkitError):
    """A field returned a non-finite value.

    ``location`` holds the parameter value(s) or point at which the
    evaluation failed.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class QuadratureConvergenceError(ToolkitError):
    """Adaptive quadrature did not reach the requested tolerance.

    The best available estimate and its error bound are attached so a
    caller may still inspect the partial result.
    """

    def __init__(self, message, best_estimate=None, error_estimate=None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate


class StencilError(ToolkitError):
    """A finite-difference stencil point could not be evaluated."""


class NearSheetError(ToolkitError):
    """Field point too close to the solenoid current sheet."""


class NonAxisymmetricFieldError(ToolkitError):
    """Operation requires an axially symmetric field but the input is not."""

    def __init__(self, message, variation=None):
        super().__init__(message)
        self.variation = variation


class IllConditionedGeometryError(ToolkitError):
    """Source point lies too close to an integration boundary."""


class LedgerConsistencyError(ToolkitError):
    """Independent routes to the canonical OAM disagree beyond tolerance."""


class ConfigError(ToolkitError):
    """Malformed or unknown configuration input."""
