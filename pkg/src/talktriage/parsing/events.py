"""New-comment detection between successive parses of one page."""

from talktriage.parsing.records import ConversationRecord, NewCommentEvent


def detect_new_comments(
    previous: list[ConversationRecord],
    current: list[ConversationRecord],
    page_revision_id: int,
) -> list[NewCommentEvent]:
    """Events for comments appended since the previous parse.

    Conversations are matched by id; a conversation unseen before counts
    as previously empty, so each of its comments yields one event. Edits
    to an existing ordinal change stored text downstream but emit nothing.
    Conversations absent from ``current`` emit nothing here; the pipeline
    marks them not-live.
    """
    previous_counts = {c.conversation_id: len(c.comments) for c in previous}
    events: list[NewCommentEvent] = []
    for conversation in current:
        known = previous_counts.get(conversation.conversation_id, 0)
        for comment in conversation.comments[known:]:
            events.append(
                NewCommentEvent(
                    conversation_id=conversation.conversation_id,
                    comment=comment,
                    page_revision_id=page_revision_id,
                )
            )
    return events


def retired_conversations(
    previous: list[ConversationRecord],
    current: list[ConversationRecord],
) -> list[str]:
    """Ids of conversations that vanished from the page (archived/deleted)."""
    current_ids = {c.conversation_id for c in current}
    return [
        c.conversation_id for c in previous if c.conversation_id not in current_ids
    ]
