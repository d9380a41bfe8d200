"""Exception types shared across the toolkit."""


class SunshadeError(Exception):
    """Base class for all toolkit errors."""


class ChecksumError(SunshadeError):
    """NMEA line failed its XOR checksum."""


class MalformedError(SunshadeError):
    """Line or field cannot be parsed at all."""


class FieldRangeError(SunshadeError):
    """A parsed value violates its documented range."""


class RangeError(SunshadeError):
    """Coordinate or date outside the supported domain."""


class MissingHeaderError(SunshadeError):
    """CSV input lacks the expected header row."""


class SingleClassError(SunshadeError):
    """Training data contains only one class."""


class NonFiniteError(SunshadeError):
    """Training data contains NaN or infinite values."""


class DimensionError(SunshadeError):
    """Matrix width does not match what the model was trained on."""


class LengthMismatchError(SunshadeError):
    """Paired sequences have different lengths."""


class InvalidMaskError(SunshadeError):
    """Feature-set mask selects no base set, or the delta set alone."""


class ConfigError(SunshadeError):
    """Scene or CLI configuration is invalid. Carries the offending field."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"config field '{field}': {message}")


class ConvergenceWarning(UserWarning):
    """An iterative fit hit its iteration cap before reaching tolerance."""
