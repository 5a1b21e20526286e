class LottoError(Exception):
    """Base class of every error raised by the solver."""


class InvalidArgumentError(LottoError, ValueError):
    pass


class NormalizationError(InvalidArgumentError):
    """Valuations do not sum to one and strict mode was requested."""


class SolverError(LottoError, RuntimeError):
    """A numerical routine failed on input that passed validation."""


class UnsupportedSizeError(LottoError, ValueError):
    """Instance too large for explicit subset enumeration or for the discretized oracle."""


class InstanceFormatError(LottoError):
    """Instance file is missing, unreadable or not of the form {"X": ..., "Y": ..., "v": [...]}."""
