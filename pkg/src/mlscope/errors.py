"""Exception hierarchy shared by all mlscope engines.

Every error carries a stable ``code`` (its class name) so the CLI and the
HTTP service can report machine-readable failures without string matching.
"""


class MlscopeError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- image / clustering ---------------------------------------------------

class DecodeError(MlscopeError):
    """Input bytes are malformed or truncated."""


class UnsupportedFormat(MlscopeError):
    """Decodable container, but not one of the accepted formats."""


class InvalidStride(MlscopeError):
    pass


class InvalidK(MlscopeError):
    pass


class InsufficientPoints(MlscopeError):
    """Fewer distinct points than requested clusters."""


class DimensionMismatch(MlscopeError):
    pass


# --- audio ----------------------------------------------------------------

class UnsupportedEncoding(MlscopeError):
    """WAV codec other than PCM16 / float32."""


class InvalidWindow(MlscopeError):
    pass


class InvalidHop(MlscopeError):
    pass


class EventBeyondDuration(MlscopeError):
    pass


class AudioTooLong(MlscopeError):
    pass


# --- gridworld / training -------------------------------------------------

class InvalidGrid(MlscopeError):
    pass


class InvalidPosition(MlscopeError):
    pass


class UnknownLevel(MlscopeError):
    pass


class SessionNotRunning(MlscopeError):
    pass


# --- service --------------------------------------------------------------

class UnknownSession(MlscopeError):
    pass


class InvalidTransition(MlscopeError):
    pass


class SessionRunning(MlscopeError):
    """Mutation rejected because the session is live."""


class InvalidCommand(MlscopeError):
    pass


class JobNotFound(MlscopeError):
    pass
