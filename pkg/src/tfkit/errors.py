"""Exception hierarchy.

Every error raised for bad input derives from :class:`TFKitError`, which is
itself a ``ValueError`` so callers that only care about "bad argument" can
catch the builtin.
"""


class TFKitError(ValueError):
    pass


class InvalidLengthError(TFKitError):
    pass


class InvalidParameterError(TFKitError):
    """A scalar parameter (hop, nfft, scale, band, lag, kernel...) is out of range."""


class MissingParameterError(TFKitError):
    pass


class InvalidSpecError(TFKitError):
    pass


class OutOfBandError(InvalidSpecError):
    pass


class IncompatibleSignalsError(TFKitError):
    pass


class FormatError(TFKitError):
    """A file could not be parsed under its declared format."""


class DegenerateError(TFKitError):
    """Input carries no energy where some is required (zero window, all-zero grid)."""


class ConsistencyError(RuntimeError):
    """An internal numerical self-check failed."""
