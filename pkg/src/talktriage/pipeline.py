"""End-to-end tick processing: deltas in, scored conversations out.

Each processed delta re-parses the page, persists one new-comment event
per appended comment, then a catch-up pass scores every conversation
whose history lags its comment count (one point per missing prefix) and
evaluates threshold watches on each fresh point. A scorer outage leaves
histories short; the next tick's catch-up retries, while ingestion and
serving continue untouched.
"""

import logging
from datetime import datetime, timezone

from talktriage.errors import ScorerProtocolError, ScorerUnavailableError
from talktriage.forecast.history import ForecastEngine
from talktriage.ingest.diffing import PageDelta, reconstruct
from talktriage.ingest.poller import Poller
from talktriage.parsing.events import detect_new_comments, retired_conversations
from talktriage.parsing.records import ConversationRecord
from talktriage.parsing.talkpage import parse_talk_page
from talktriage.ranking import evaluate_watches
from talktriage.store import (
    KIND_ALERT_EMITTED,
    KIND_FORECAST_POINT,
    KIND_NEW_COMMENT,
    Store,
    alert_to_payload,
    new_comment_payload,
    point_to_payload,
)

logger = logging.getLogger(__name__)


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class Pipeline:
    def __init__(self, poller: Poller, engine: ForecastEngine, store: Store, clock=_utcnow):
        self.poller = poller
        self.engine = engine
        self.store = store
        self._clock = clock
        self._last_text: dict[str, str] = {}
        self._last_parse: dict[str, list[ConversationRecord]] = {}

    def process_tick(self, now: float | None = None) -> int:
        """One poll round; returns the number of new comments ingested."""
        ingested = 0
        for delta in self.poller.tick(now):
            ingested += self._process_delta(delta)
            self.poller.acknowledge(delta)
        self._score_pending()
        return ingested

    def _process_delta(self, delta: PageDelta) -> int:
        page = delta.page_title
        new_text = reconstruct(self._last_text.get(page, ""), delta)
        previous = self._last_parse.get(page, [])
        current = parse_talk_page(new_text, page)

        events = detect_new_comments(previous, current, delta.new_revision_id)
        by_id = {c.conversation_id: c for c in current}
        view = self.store.snapshot()
        known_counts = {
            cid: len(conv.comments) for cid, conv in view.conversations.items()
        }
        appended = 0
        for event in events:
            # a restored (previously archived) section re-announces comments
            # the store already holds; only genuinely new ordinals append
            known = known_counts.get(event.conversation_id, 0)
            if event.comment.ordinal <= known:
                continue
            self.store.append_event(
                KIND_NEW_COMMENT,
                new_comment_payload(
                    by_id[event.conversation_id], event.comment, event.page_revision_id
                ),
            )
            known_counts[event.conversation_id] = event.comment.ordinal
            appended += 1

        # silent text edits: same ordinal, changed body relative to stored state
        for conversation in current:
            stored = view.conversations.get(conversation.conversation_id)
            if stored is None:
                continue
            shared = min(len(stored.comments), len(conversation.comments))
            for ordinal in range(1, shared + 1):
                new_comment = conversation.comments[ordinal - 1]
                if stored.comments[ordinal - 1].text != new_comment.text:
                    self.store.update_comment_text(
                        conversation.conversation_id, ordinal, new_comment.text
                    )

        # retirement against the store, not just the previous parse, so
        # sections that vanished across a restart are still caught
        for conv_id in retired_conversations(
            [c for c in view.conversations.values() if c.page_title == page],
            current,
        ):
            self.store.set_liveness(conv_id, False)
        for conversation in current:
            self.store.set_liveness(conversation.conversation_id, True)

        self._last_text[page] = new_text
        self._last_parse[page] = current
        return appended

    def _score_pending(self) -> None:
        """Append one forecast point per unscored prefix, oldest first."""
        view = self.store.snapshot()
        for conv_id in sorted(view.conversations):
            conversation = view.conversations[conv_id]
            history = view.histories.get(conv_id)
            scored = len(history.points) if history else 0
            for k in range(scored + 1, len(conversation.comments) + 1):
                try:
                    point = self.engine.point_for_prefix(conversation, k)
                except (ScorerUnavailableError, ScorerProtocolError) as exc:
                    logger.warning(
                        "scoring %s prefix %d deferred: %s", conv_id, k, exc
                    )
                    return  # retry the remainder on the next tick
                self.store.append_event(KIND_FORECAST_POINT, point_to_payload(point))
                self._fire_alerts(point)

    def _fire_alerts(self, point) -> None:
        watches = list(self.store.snapshot().watches.values())
        alerts = evaluate_watches(
            watches, point, self.store.alerted_pairs, self._clock()
        )
        for alert in alerts:
            self.store.append_event(KIND_ALERT_EMITTED, alert_to_payload(alert))
