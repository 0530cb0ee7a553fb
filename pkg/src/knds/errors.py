"""Exception hierarchy.

The CLI maps these onto exit codes: ``DomainError`` -> 2,
``NoStableSolution`` -> 3, ``NumericalFailure`` -> 4.
"""


class KNdSError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(KNdSError, ValueError):
    """Inputs outside the domain of an operation."""


class LambdaZeroError(DomainError):
    """Raised by Lambda != 0 routines when given Lambda = 0 (use the Kerr-Newman path)."""


class OnHorizonError(DomainError):
    """A radius lies on a horizon, where region or geodesic data is undefined."""

    def __init__(self, message, radius=None):
        super().__init__(message)
        self.radius = radius


class DegenerateStructureError(DomainError):
    """The horizon structure lacks the regions an operation needs."""

    def __init__(self, message, missing_regions=()):
        super().__init__(message)
        self.missing_regions = tuple(missing_regions)


class UnsupportedConfigurationError(DomainError):
    """E.g. the product temperature formula with a complex root pair."""


class ClosedFormUnavailableError(DomainError):
    """Closed-form geodesics need four distinct real roots."""


class NoStableSolution(KNdSError):
    """No zero-temperature configuration exists for the requested inputs."""


class NumericalFailure(KNdSError, RuntimeError):
    """An iterative method did not converge."""


class OracleFailure(NumericalFailure):
    """The Newton oracle for the stable system failed; ``diagnostics`` holds the trail."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
