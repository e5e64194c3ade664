"""Per-conversation forecast histories.

A history holds exactly one point per prefix: after_ordinal values run
1..n with no gaps or duplicates, and appended points are never mutated.
Histories are plain immutable values; updates return a new history
sharing the existing points.
"""

from dataclasses import dataclass
from datetime import datetime, timezone

from talktriage.forecast.baseline import stored_score
from talktriage.forecast.scorer import ScorerDescriptor, score_prefix
from talktriage.parsing.records import ConversationRecord, NewCommentEvent


@dataclass(frozen=True)
class ForecastPoint:
    conversation_id: str
    after_ordinal: int  # score computed on the prefix {c_1..c_k}
    score: float
    scorer_id: str
    computed_at: datetime

    def __post_init__(self):
        if self.after_ordinal < 1:
            raise ValueError(f"after_ordinal must be >= 1: {self.after_ordinal}")
        if not 0.0 <= self.score <= 1.0:
            raise ValueError(f"score outside [0, 1]: {self.score}")


@dataclass(frozen=True)
class ForecastHistory:
    conversation_id: str
    points: tuple[ForecastPoint, ...] = ()

    def __post_init__(self):
        expected = range(1, len(self.points) + 1)
        actual = [p.after_ordinal for p in self.points]
        if actual != list(expected):
            raise ValueError(f"history ordinals must be 1..n contiguous, got {actual}")

    @property
    def latest(self) -> ForecastPoint | None:
        return self.points[-1] if self.points else None

    def append(self, point: ForecastPoint) -> "ForecastHistory":
        if point.after_ordinal != len(self.points) + 1:
            raise ValueError(
                f"append out of order: ordinal {point.after_ordinal} "
                f"onto history of length {len(self.points)}"
            )
        return ForecastHistory(self.conversation_id, self.points + (point,))


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class ForecastEngine:
    """Applies one scorer to conversations, maintaining their histories."""

    def __init__(self, scorer: ScorerDescriptor, clock=_utcnow):
        self.scorer = scorer
        self._clock = clock

    def point_for_prefix(
        self, conversation: ConversationRecord, k: int
    ) -> ForecastPoint:
        raw = score_prefix(self.scorer, conversation, k)
        return ForecastPoint(
            conversation_id=conversation.conversation_id,
            after_ordinal=k,
            score=stored_score(raw),
            scorer_id=self.scorer.scorer_id,
            computed_at=self._clock(),
        )

    def on_new_comment(
        self,
        history: ForecastHistory,
        conversation: ConversationRecord,
        event: NewCommentEvent,
    ) -> ForecastHistory:
        """Advance the history through the event's ordinal.

        An ordinal gap (several comments arrived in one collapsed
        revision) backfills one point per missing prefix, in order. An
        ordinal at or below the current length is a duplicate delivery
        and leaves the history untouched.
        """
        target = event.comment.ordinal
        for k in range(len(history.points) + 1, target + 1):
            history = history.append(self.point_for_prefix(conversation, k))
        return history

    def full_history(self, conversation: ConversationRecord) -> ForecastHistory:
        """Offline scoring of every prefix of a finished conversation."""
        history = ForecastHistory(conversation.conversation_id)
        for k in range(1, len(conversation.comments) + 1):
            history = history.append(self.point_for_prefix(conversation, k))
        return history
