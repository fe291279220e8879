"""Exception hierarchy shared by every stage of the compressor."""


class GCISError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTextError(GCISError, ValueError):
    """A symbol sequence violates the text invariants (sentinel, alphabet)."""


class UnencodableValueError(GCISError, ValueError):
    """A value does not fit in the largest Simple8b slot (60 bits)."""


class RangeError(GCISError, ValueError):
    """A value does not fit in the requested fixed bit width."""


class CorruptArchiveError(GCISError):
    """The archive (or one of its blocks) is internally inconsistent."""


class TruncatedArchiveError(CorruptArchiveError):
    """The byte stream ended before a complete structure could be read."""


class BadMagicError(CorruptArchiveError):
    pass


class UnsupportedVersionError(CorruptArchiveError):
    pass


class InvariantError(GCISError, AssertionError):
    """Internal consistency check failed while building a grammar."""
