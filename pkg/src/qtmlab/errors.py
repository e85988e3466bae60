"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: validation errors -> 1, resource
guards -> 2, numeric failures -> 3.
"""


class QtmLabError(Exception):
    """Base class for all package errors."""


class ValidationError(QtmLabError):
    """Malformed input, schema violation, or precondition failure."""


class ResourceGuardError(QtmLabError):
    """An enumeration or support-size guard was exceeded."""


class NumericFailure(QtmLabError):
    """A numeric routine failed to reach its accuracy contract."""


class NotAMachineError(ValidationError):
    """A natural number that does not decode to any machine."""


class UnsupportedAmplitudeError(ValidationError):
    """Amplitude outside the exact ring where exactness is required."""
