"""Exception hierarchy shared by the whole package."""


class TwistorMapError(Exception):
    """Base class for every error raised by twistormap."""


class ValidationError(TwistorMapError):
    """Input data violates a structural requirement."""


class OrientationError(ValidationError):
    pass


class NotSelfDual(ValidationError):
    pass


class NotALieAlgebra(ValidationError):
    pass


class NotAComplexStructure(ValidationError):
    pass


class NotOrthogonal(ValidationError):
    pass


class WrongOrientation(ValidationError):
    pass


class NotIntegrable(ValidationError):
    pass


class BasepointMismatch(ValidationError):
    pass


class DegenerateSpan(TwistorMapError):
    pass


class BadParameter(ValidationError):
    pass


class SpecParseError(TwistorMapError):
    """Raised when an input document cannot be parsed.

    ``location`` names the offending line or field so that CLI users can find it.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)
