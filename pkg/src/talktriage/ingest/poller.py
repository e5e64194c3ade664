"""Per-page revision polling with backoff, isolation, and ack-gated state.

Each tick polls every enabled page that is due. Emitting a delta does not
advance the page's last-seen revision; the consumer must call
``acknowledge`` once it has fully processed the delta, otherwise the same
span is re-emitted on a later tick. Revisions arriving between two polls
are collapsed into a single delta from the last acknowledged revision to
the newest one.
"""

import logging
import time
from dataclasses import dataclass
from datetime import datetime, timezone

from talktriage.errors import PageGoneError, ProtocolError, TransportError, UsageError
from talktriage.ingest.config import PageConfig
from talktriage.ingest.diffing import PageDelta, compute_delta, diff_texts
from talktriage.ingest.revisions import RevisionSnapshot

logger = logging.getLogger(__name__)

BACKOFF_CAP_FACTOR = 10.0  # max backoff = 10 x poll_interval


@dataclass
class _PageState:
    config: PageConfig
    last_snapshot: RevisionSnapshot | None = None
    pending: tuple[PageDelta, RevisionSnapshot] | None = None
    failures: int = 0
    next_due: float = 0.0
    disabled: bool = False
    last_success_at: datetime | None = None


class Poller:
    def __init__(self, source, configs, clock=time.monotonic):
        self._source = source
        self._clock = clock
        self._pages: dict[str, _PageState] = {}
        for config in configs:
            self._pages[config.page_title] = _PageState(
                config=config, disabled=not config.enabled
            )

    def tick(self, now: float | None = None) -> list[PageDelta]:
        """Poll every due page once; a failing page never blocks the others."""
        now = self._clock() if now is None else now
        deltas: list[PageDelta] = []
        for title, state in self._pages.items():
            if state.disabled or now < state.next_due:
                continue
            if state.pending is not None:
                # previous delta not acknowledged yet; re-emit the same span
                deltas.append(state.pending[0])
                continue
            try:
                delta = self._poll_page(state)
            except PageGoneError as exc:
                logger.warning("disabling %s: %s", title, exc)
                state.disabled = True
                continue
            except (TransportError, ProtocolError) as exc:
                state.failures += 1
                backoff = min(
                    state.config.poll_interval * (2.0 ** state.failures),
                    state.config.poll_interval * BACKOFF_CAP_FACTOR,
                )
                state.next_due = now + backoff
                logger.warning(
                    "poll failed for %s (attempt %d, retry in %.0fs): %s",
                    title, state.failures, backoff, exc,
                )
                continue
            state.failures = 0
            state.next_due = now + state.config.poll_interval
            state.last_success_at = datetime.now(timezone.utc)
            if delta is not None:
                deltas.append(delta)
        return deltas

    def _poll_page(self, state: _PageState) -> PageDelta | None:
        newest = self._source.fetch_latest(state.config.page_title)
        last = state.last_snapshot
        if last is None:
            delta = diff_texts(
                "",
                newest.wikitext,
                page_title=newest.page_title,
                old_revision_id=0,
                new_revision_id=newest.revision_id,
            )
        elif newest.revision_id == last.revision_id:
            return None
        else:
            delta = compute_delta(last, newest)
        state.pending = (delta, newest)
        return delta

    def acknowledge(self, delta: PageDelta) -> None:
        """Mark a delta as fully processed, advancing the page's last-seen state."""
        state = self._pages.get(delta.page_title)
        if state is None or state.pending is None or state.pending[0] is not delta:
            raise UsageError(f"acknowledge: no pending delta for {delta.page_title}")
        state.last_snapshot = state.pending[1]
        state.pending = None

    def previous_wikitext(self, page_title: str) -> str:
        state = self._pages.get(page_title)
        if state is None or state.last_snapshot is None:
            return ""
        return state.last_snapshot.wikitext

    @property
    def disabled_pages(self) -> list[str]:
        return sorted(t for t, s in self._pages.items() if s.disabled)

    @property
    def tracked_pages(self) -> list[str]:
        return sorted(self._pages)

    def last_poll_times(self) -> dict[str, str | None]:
        """Wall-clock time of each page's last successful poll (for health reporting)."""
        return {
            title: (
                state.last_success_at.isoformat().replace("+00:00", "Z")
                if state.last_success_at
                else None
            )
            for title, state in self._pages.items()
        }
