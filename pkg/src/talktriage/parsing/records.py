"""Parsed conversation data model."""

from dataclasses import dataclass, field, replace
from datetime import datetime

UNSIGNED_AUTHOR = "unsigned"


@dataclass(frozen=True)
class CommentRecord:
    comment_id: str
    author: str  # username, or the "unsigned" sentinel
    posted_at: datetime | None  # UTC; absent when the timestamp did not parse
    text: str  # raw wikitext, signature stripped
    indent_depth: int
    parent_comment_id: str | None
    ordinal: int  # 1-based position in reply order


@dataclass(frozen=True)
class ConversationRecord:
    conversation_id: str
    page_title: str
    heading: str
    comments: tuple[CommentRecord, ...]
    is_live: bool = True

    @property
    def last_activity(self) -> datetime | None:
        dated = [c.posted_at for c in self.comments if c.posted_at is not None]
        return max(dated) if dated else None

    def with_comments(self, comments: tuple[CommentRecord, ...]) -> "ConversationRecord":
        return replace(self, comments=comments)

    def retired(self) -> "ConversationRecord":
        return replace(self, is_live=False)


@dataclass(frozen=True)
class NewCommentEvent:
    conversation_id: str
    comment: CommentRecord
    page_revision_id: int


@dataclass
class ParseDiagnostics:
    """Counters for regions the parser skipped; parsing itself never fails."""

    sections_seen: int = 0
    sections_without_comments: int = 0
    lead_lines_ignored: int = 0
    undated_signatures: int = 0
    duplicate_section_keys: int = 0
