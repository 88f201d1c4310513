"""Exception taxonomy for hpauth.

Every failure mode a caller is expected to handle has its own class, and
all of them derive from :class:`HopfieldAuthError`, so a bare
``except HopfieldAuthError`` catches anything this package raises
deliberately. Programmer errors (wrong types, malformed constructor
arguments) raise plain ``ValueError``/``TypeError`` instead.
"""


class HopfieldAuthError(Exception):
    """Base class for all errors raised by hpauth."""


class BadConfigError(HopfieldAuthError):
    """Network configuration violates an invariant."""


class LengthMismatchError(HopfieldAuthError):
    """Pattern length does not match the network size."""


class CapacityExceededError(HopfieldAuthError):
    """Storing one more pattern would exceed the configured capacity."""


class EmptyNetworkError(HopfieldAuthError):
    """Removal requested from a network with no stored patterns."""


class NonAsciiError(HopfieldAuthError):
    """Credential text contains characters outside printable ASCII."""


class TooLongError(HopfieldAuthError):
    """Encoded credential does not fit the configured pattern length."""


class DelimiterInInputError(HopfieldAuthError):
    """Credential text contains the reserved field-delimiter byte."""


class MalformedPatternError(HopfieldAuthError):
    """Bit string cannot be decoded back into credential fields."""


class EmptyImageError(HopfieldAuthError):
    """Source raster contains no pixels."""


class BadDimensionsError(HopfieldAuthError):
    """Requested output matrix dimensions are not positive."""


class DuplicateUserError(HopfieldAuthError):
    """Username is already registered in the store."""


class AuthFailedError(HopfieldAuthError):
    """Current credentials were rejected during a password change."""


class IoFailureError(HopfieldAuthError):
    """Reading or writing a file failed at the OS level."""


class CorruptFileError(HopfieldAuthError):
    """Store file is truncated, mislabeled, or violates a structural invariant."""


class BadParamsError(HopfieldAuthError):
    """Benchmark parameters are out of range."""


class EmptySecretError(HopfieldAuthError):
    """An empty secret was supplied where one is required."""
