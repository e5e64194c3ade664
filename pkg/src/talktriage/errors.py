"""Exception taxonomy shared across the pipeline."""


class TalkTriageError(Exception):
    """Base class for all errors raised by this package."""


class TransportError(TalkTriageError):
    """Network-level failure talking to a remote service; retryable."""


class PageGoneError(TalkTriageError):
    """Tracked page is missing or was deleted upstream."""


class ProtocolError(TalkTriageError):
    """Remote endpoint answered with something outside its contract."""


class StaleRevisionError(ProtocolError):
    """Remote returned a revision older than one already processed."""


class UsageError(TalkTriageError):
    """Caller violated an operation precondition."""


class ConfigurationError(TalkTriageError):
    """Invalid configuration detected at startup."""


class ScorerUnavailableError(TalkTriageError):
    """External scorer unreachable or timed out; safe to retry later."""


class ScorerProtocolError(ProtocolError):
    """External scorer answered outside the wire contract (bad JSON, bad range)."""


class PersistenceError(TalkTriageError):
    """Durable append failed; ingestion must halt, reads may continue."""


class CorpusValidationError(TalkTriageError):
    """Labeled corpus failed validation; offending conversation ids attached."""

    def __init__(self, message: str, conversation_ids: list[str] | None = None):
        super().__init__(message)
        self.conversation_ids = conversation_ids or []
