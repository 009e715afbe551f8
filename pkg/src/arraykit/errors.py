"""Exception hierarchy shared by every arraykit module."""


class ArrayKitError(ValueError):
    """Base class for all toolkit errors."""


class DomainError(ArrayKitError):
    """An argument lies outside the domain of the operation."""


class ShapeError(ArrayKitError):
    """Matrix or vector dimensions are inconsistent."""


class InvalidModeError(ArrayKitError):
    """Unsupported or meaningless resonant mode index."""


class DegeneratePatternError(ArrayKitError):
    """The radiation pattern is identically zero."""


class BeamwidthUndefinedError(ArrayKitError):
    """The main lobe has no -3 dB crossing on one or both sides."""


class SingularityError(ArrayKitError):
    """Z_in + Z0 = 0, the reflection coefficient is undefined."""


class ActiveNetworkError(ArrayKitError):
    """|Gamma| > 1, which a passive load cannot produce."""


class TouchstoneParseError(ArrayKitError):
    """Malformed Touchstone content. ``lineno`` is 1-based (None if unknown)."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
