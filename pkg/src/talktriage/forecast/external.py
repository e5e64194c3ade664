"""HTTP adapter for an external scoring service.

Wire protocol (docs/formats.md): POST the conversation prefix as

    {"comments": [{"author": "...", "timestamp": "...Z" | null, "text": "..."}, ...]}

in reply order; the service answers ``{"score": s}`` with ``0 <= s <= 1``.
The remote value is returned verbatim after range validation. Any failure
surfaces as an error without touching forecast histories; the next tick
retries.
"""

from datetime import datetime

import requests

from talktriage.errors import ScorerProtocolError, ScorerUnavailableError
from talktriage.parsing.records import CommentRecord

DEFAULT_TIMEOUT = 10.0


def _iso(dt: datetime | None) -> str | None:
    return dt.isoformat().replace("+00:00", "Z") if dt else None


def build_request_payload(comments: list[CommentRecord]) -> dict:
    return {
        "comments": [
            {"author": c.author, "timestamp": _iso(c.posted_at), "text": c.text}
            for c in comments
        ]
    }


def external_score_request(
    endpoint: str,
    comments: list[CommentRecord],
    timeout: float = DEFAULT_TIMEOUT,
    session=None,
) -> float:
    """Score a non-empty conversation prefix via the external service."""
    if not comments:
        raise ScorerProtocolError("refusing to score an empty prefix")
    http = session or requests
    try:
        response = http.post(
            endpoint, json=build_request_payload(comments), timeout=timeout
        )
    except requests.Timeout as exc:
        raise ScorerUnavailableError(f"scorer timed out after {timeout}s") from exc
    except requests.RequestException as exc:
        raise ScorerUnavailableError(f"scorer unreachable: {exc}") from exc
    if response.status_code != 200:
        raise ScorerUnavailableError(f"scorer answered HTTP {response.status_code}")
    try:
        payload = response.json()
        score = payload["score"]
    except (ValueError, KeyError, TypeError) as exc:
        raise ScorerProtocolError(f"malformed scorer response: {exc}") from exc
    if not isinstance(score, (int, float)) or isinstance(score, bool):
        raise ScorerProtocolError(f"score is not a number: {score!r}")
    if not 0.0 <= float(score) <= 1.0:
        raise ScorerProtocolError(f"score outside [0, 1]: {score}")
    return float(score)
