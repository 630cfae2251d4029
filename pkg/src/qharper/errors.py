"""Exception types shared across the package.

The CLI maps these onto exit codes: configuration problems exit 2,
numerical failures exit 3, I/O failures exit 4.
"""


class QharperError(Exception):
    """Base class for all package errors."""


class InvalidParameterError(QharperError, ValueError):
    """A physical or numerical parameter violates its constraints."""


class NumericalFailureError(QharperError, RuntimeError):
    """An eigensolve or other numerical routine failed to converge."""


class CalibrationError(QharperError, RuntimeError):
    """A calibration target is unreachable or a layout is inconsistent.

    Carries ``achieved`` when the failure is an unreachable target: the
    (min, max) of the quantity actually attainable over the search bracket.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class UndefinedEstimateError(QharperError, RuntimeError):
    """A correlation estimate is undefined (no singles on some arm).

    Carries the raw ``record`` so callers can report partial results.
    """

    def __init__(self, message, record=None, site=None):
        super().__init__(message)
        self.record = record
        self.site = site


class ConfigError(QharperError, ValueError):
    """A run configuration file is missing, malformed, or inconsistent."""
