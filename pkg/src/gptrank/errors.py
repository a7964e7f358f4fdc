"""Exception types shared across the package."""


class GptRankError(Exception):
    """Base class for errors raised by this package."""


class ParameterError(GptRankError, ValueError):
    """Invalid, inconsistent, or mismatched parameters."""


class DecodeFailure(GptRankError):
    """No codeword was found within the decoding radius."""


class FormatError(GptRankError):
    """A key, ciphertext, or message file is malformed or corrupted."""
