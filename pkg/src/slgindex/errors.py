"""Exception types shared across the package."""


class SlgIndexError(Exception):
    """Base class for every error raised by slgindex."""


class FormatError(SlgIndexError):
    """A serialized grammar or index is structurally malformed."""


class VersionError(FormatError):
    """A serialized index carries an unsupported format version."""


class ValidationError(SlgIndexError):
    """A grammar violates a straight-line grammar invariant."""


class TerminatorError(ValidationError):
    """The text does not end in exactly one terminator byte."""


class OutOfBounds(SlgIndexError, IndexError):
    """A random-access request falls outside the text."""


class EmptyPattern(SlgIndexError, ValueError):
    """Pattern matching was asked for the empty pattern."""


class CycleError(SlgIndexError):
    """A structure that must be a DAG contains a cycle."""


class ScaleError(SlgIndexError, ValueError):
    """An oracle routine was given an input above its size cap."""


class LengthError(SlgIndexError, ValueError):
    """A benchmark pattern length exceeds the text length."""
