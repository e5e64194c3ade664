"""Deterministic identifiers.

Every id is the first 16 hex chars of a SHA-256 over a '|'-joined field
tuple. The exact strings hashed here are a compatibility contract: stored
dumps and event logs embed these ids.
"""

import hashlib
import re

_WS = re.compile(r"\s+")


def _digest(*parts: str) -> str:
    joined = "|".join(parts)
    return hashlib.sha256(joined.encode("utf-8")).hexdigest()[:16]


def normalize_text(text: str) -> str:
    """Collapse all whitespace runs to single spaces and trim."""
    return _WS.sub(" ", text).strip()


def conversation_id(page_title: str, heading: str, first_comment_ts: str) -> str:
    """Stable id for one conversation.

    `first_comment_ts` is the ISO-8601 timestamp of the conversation's first
    comment, or "" when the first comment is undated.
    """
    return _digest("conv", page_title, normalize_text(heading), first_comment_ts)


def comment_id(conv_id: str, author: str, posted_at: str, body: str) -> str:
    """Stable id for one comment within a conversation.

    `body` must be the signed-run text only (trailing unsigned material is
    excluded) so that later appends to the section never change the id.
    """
    return _digest("comment", conv_id, author, posted_at, normalize_text(body))


def watch_id(moderator_id: str, conv_id: str) -> str:
    """One watch per (moderator, conversation); the id encodes that pair."""
    return _digest("watch", moderator_id, conv_id)


def alert_id(watch: str, after_ordinal: int) -> str:
    """One alert per (watch, triggering ordinal); replay yields identical ids."""
    return _digest("alert", watch, str(after_ordinal))
