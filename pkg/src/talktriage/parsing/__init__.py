from talktriage.parsing.events import detect_new_comments, retired_conversations
from talktriage.parsing.records import (
    CommentRecord,
    ConversationRecord,
    NewCommentEvent,
    ParseDiagnostics,
)
from talktriage.parsing.signatures import extract_signature
from talktriage.parsing.talkpage import parse_talk_page
from talktriage.parsing.threads import thread_comments

__all__ = [
    "CommentRecord",
    "ConversationRecord",
    "NewCommentEvent",
    "ParseDiagnostics",
    "detect_new_comments",
    "extract_signature",
    "parse_talk_page",
    "retired_conversations",
    "thread_comments",
]
