"""Conversation dump format: newline-delimited JSON, one conversation per
line. Schema documented in docs/formats.md; extra per-comment keys (the
labeled-corpus ``is_antisocial`` flag) survive a round trip untouched.
"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator

from talktriage.parsing.records import CommentRecord, ConversationRecord


def _iso(dt: datetime | None) -> str | None:
    return dt.isoformat().replace("+00:00", "Z") if dt else None


def _parse_dt(raw: str | None) -> datetime | None:
    if raw is None:
        return None
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    return dt if dt.tzinfo else dt.replace(tzinfo=timezone.utc)


def comment_to_dict(comment: CommentRecord) -> dict:
    return {
        "comment_id": comment.comment_id,
        "author": comment.author,
        "posted_at": _iso(comment.posted_at),
        "text": comment.text,
        "indent_depth": comment.indent_depth,
        "parent_comment_id": comment.parent_comment_id,
        "ordinal": comment.ordinal,
    }


def conversation_to_dict(conversation: ConversationRecord) -> dict:
    return {
        "conversation_id": conversation.conversation_id,
        "page_title": conversation.page_title,
        "heading": conversation.heading,
        "is_live": conversation.is_live,
        "last_activity": _iso(conversation.last_activity),
        "comments": [comment_to_dict(c) for c in conversation.comments],
    }


def comment_from_dict(data: dict) -> CommentRecord:
    return CommentRecord(
        comment_id=data["comment_id"],
        author=data["author"],
        posted_at=_parse_dt(data.get("posted_at")),
        text=data["text"],
        indent_depth=data["indent_depth"],
        parent_comment_id=data.get("parent_comment_id"),
        ordinal=data["ordinal"],
    )


def conversation_from_dict(data: dict) -> ConversationRecord:
    return ConversationRecord(
        conversation_id=data["conversation_id"],
        page_title=data["page_title"],
        heading=data["heading"],
        comments=tuple(comment_from_dict(c) for c in data["comments"]),
        is_live=data.get("is_live", True),
    )


def write_dump(conversations: Iterable[ConversationRecord], stream: IO[str]) -> None:
    for conversation in conversations:
        stream.write(json.dumps(conversation_to_dict(conversation), ensure_ascii=False))
        stream.write("\n")


def dump_to_path(conversations: Iterable[ConversationRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_dump(conversations, fh)


def iter_dump_dicts(path: str | Path) -> Iterator[dict]:
    """Raw records, preserving any extension fields like labels."""
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)


def load_dump(path: str | Path) -> list[ConversationRecord]:
    return [conversation_from_dict(d) for d in iter_dump_dicts(path)]
