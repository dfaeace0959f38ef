"""Exception hierarchy shared by every module."""


class Weasel2Error(Exception):
    """Base class for all errors raised by this package."""


class DegenerateSeries(Weasel2Error, ValueError):
    pass


class InvalidDilation(Weasel2Error, ValueError):
    pass


class InvalidWindow(Weasel2Error, ValueError):
    pass


class InsufficientData(Weasel2Error, ValueError):
    pass


class ShapeMismatch(Weasel2Error, ValueError):
    pass


class FitError(Weasel2Error, ValueError):
    pass


class FormatError(Weasel2Error, ValueError):
    """Malformed dataset file. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModelFileError(Weasel2Error):
    """Base class for model-file loading failures."""


class VersionError(ModelFileError):
    pass


class ParseError(ModelFileError):
    pass


class SchemaError(ModelFileError):
    pass


class IoError(Weasel2Error, OSError):
    pass
