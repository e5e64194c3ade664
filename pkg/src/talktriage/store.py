"""Durable event-sourced state: conversations, histories, watches, alerts.

Single append-only log file plus an optional compacted snapshot, embedded
in-process. One writer, any number of snapshot readers.

On-disk record layout (docs/formats.md):

    [4 bytes big-endian payload length]
    [4 bytes big-endian CRC32 of payload]
    [payload: UTF-8 JSON {"sequence_no", "kind", "payload", "applied_at"}]

Appends are fsynced before they are acknowledged. Replay stops at the
first corrupt record, keeps the valid prefix, and truncates the tail so
later appends extend a clean file. Applying a duplicate of the final
entry is a no-op, which is what makes crash-recovery replay idempotent.
"""

import json
import logging
import os
import struct
import threading
import zlib
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from talktriage.errors import PersistenceError, UsageError
from talktriage.forecast.history import ForecastHistory, ForecastPoint
from talktriage.parsing.records import CommentRecord, ConversationRecord
from talktriage.parsing import dumpio
from talktriage.ranking import AlertEvent, WatchItem

logger = logging.getLogger(__name__)

KIND_NEW_COMMENT = "new-comment"
KIND_FORECAST_POINT = "forecast-point"
KIND_WATCH_CREATED = "watch-created"
KIND_WATCH_DELETED = "watch-deleted"
KIND_ALERT_EMITTED = "alert-emitted"

_KINDS = {
    KIND_NEW_COMMENT,
    KIND_FORECAST_POINT,
    KIND_WATCH_CREATED,
    KIND_WATCH_DELETED,
    KIND_ALERT_EMITTED,
}

_HEADER = struct.Struct(">II")  # length, crc32

LOG_FILENAME = "events.log"
SNAPSHOT_FILENAME = "snapshot.json"


def _iso(dt: datetime | None) -> str | None:
    return dt.isoformat().replace("+00:00", "Z") if dt else None


def _parse_dt(raw: str | None) -> datetime | None:
    if raw is None:
        return None
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    return dt if dt.tzinfo else dt.replace(tzinfo=timezone.utc)


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(frozen=True)
class EventLogEntry:
    sequence_no: int
    kind: str
    payload: dict
    applied_at: datetime


@dataclass(frozen=True)
class StoreView:
    """Immutable read view at one log position; later appends are invisible."""

    sequence_no: int
    conversations: dict[str, ConversationRecord]
    histories: dict[str, ForecastHistory]
    watches: dict[str, WatchItem]
    alerts: tuple[tuple[int, AlertEvent], ...]  # (sequence_no, alert)

    def alert_events(self) -> list[AlertEvent]:
        return [alert for _, alert in self.alerts]


def point_to_payload(point: ForecastPoint) -> dict:
    return {
        "conversation_id": point.conversation_id,
        "after_ordinal": point.after_ordinal,
        "score": point.score,
        "scorer_id": point.scorer_id,
        "computed_at": _iso(point.computed_at),
    }


def new_comment_payload(
    conversation: ConversationRecord, comment: CommentRecord, page_revision_id: int
) -> dict:
    return {
        "conversation_id": conversation.conversation_id,
        "page_title": conversation.page_title,
        "heading": conversation.heading,
        "page_revision_id": page_revision_id,
        "comment": dumpio.comment_to_dict(comment),
    }


def watch_to_payload(watch: WatchItem) -> dict:
    return {
        "watch_id": watch.watch_id,
        "moderator_id": watch.moderator_id,
        "conversation_id": watch.conversation_id,
        "alert_threshold": watch.alert_threshold,
        "created_at": _iso(watch.created_at),
    }


def alert_to_payload(alert: AlertEvent) -> dict:
    return {
        "alert_id": alert.alert_id,
        "watch_id": alert.watch_id,
        "conversation_id": alert.conversation_id,
        "triggering_after_ordinal": alert.triggering_after_ordinal,
        "score_at_trigger": alert.score_at_trigger,
        "emitted_at": _iso(alert.emitted_at),
    }


class Store:
    """Event log plus the state folded from it.

    ``directory=None`` keeps everything in memory (no durability); with a
    directory, ``events.log`` and ``snapshot.json`` live there.
    """

    def __init__(self, directory: str | Path | None = None, clock=_utcnow):
        self._lock = threading.Lock()
        self._clock = clock
        self._sequence_no = 0
        self._conversations: dict[str, ConversationRecord] = {}
        self._histories: dict[str, ForecastHistory] = {}
        self._watches: dict[str, WatchItem] = {}
        self._alerts: list[tuple[int, AlertEvent]] = []
        self._alert_ids: set[str] = set()
        self._alerted_pairs: set[tuple[str, int]] = set()
        self._failed = False

        self._directory = Path(directory) if directory else None
        self._log_fh = None
        if self._directory is not None:
            self._directory.mkdir(parents=True, exist_ok=True)
            self._recover()
            self._log_fh = open(self._log_path, "ab")

    # -- paths ---------------------------------------------------------

    @property
    def _log_path(self) -> Path:
        return self._directory / LOG_FILENAME

    @property
    def _snapshot_path(self) -> Path:
        return self._directory / SNAPSHOT_FILENAME

    # -- append --------------------------------------------------------

    def append_event(self, kind: str, payload: dict) -> int:
        """Validate, apply, persist; returns the assigned sequence number.

        The entry is durable (fsynced) before this returns. A payload
        failing its type invariants is rejected with nothing written.
        """
        if kind not in _KINDS:
            raise UsageError(f"unknown event kind: {kind!r}")
        with self._lock:
            if self._failed:
                raise PersistenceError("store is failed; ingestion halted")
            entry = EventLogEntry(
                sequence_no=self._sequence_no + 1,
                kind=kind,
                payload=payload,
                applied_at=self._clock(),
            )
            self._validate(entry)
            if self._log_fh is not None:
                try:
                    self._write_record(entry)
                except (OSError, ValueError) as exc:
                    self._failed = True
                    raise PersistenceError(f"append failed: {exc}") from exc
            self._apply(entry)
            self._sequence_no = entry.sequence_no
            return entry.sequence_no

    def _write_record(self, entry: EventLogEntry) -> None:
        blob = json.dumps(
            {
                "sequence_no": entry.sequence_no,
                "kind": entry.kind,
                "payload": entry.payload,
                "applied_at": _iso(entry.applied_at),
            },
            ensure_ascii=False,
        ).encode("utf-8")
        self._log_fh.write(_HEADER.pack(len(blob), zlib.crc32(blob)))
        self._log_fh.write(blob)
        self._log_fh.flush()
        os.fsync(self._log_fh.fileno())

    # -- validation (strict; applies only to fresh appends) -------------

    def _validate(self, entry: EventLogEntry) -> None:
        payload = entry.payload
        if entry.kind == KIND_FORECAST_POINT:
            # constructing the point runs its range/ordinal invariants
            point = self._point_from_payload(payload)
            history = self._histories.get(point.conversation_id)
            length = len(history.points) if history else 0
            if point.after_ordinal != length + 1:
                raise UsageError(
                    f"forecast point ordinal {point.after_ordinal} does not "
                    f"extend history of length {length}"
                )
        elif entry.kind == KIND_NEW_COMMENT:
            comment = dumpio.comment_from_dict(payload["comment"])
            existing = self._conversations.get(payload["conversation_id"])
            count = len(existing.comments) if existing else 0
            if comment.ordinal != count + 1:
                raise UsageError(
                    f"comment ordinal {comment.ordinal} does not extend "
                    f"conversation of {count} comments"
                )
        elif entry.kind == KIND_WATCH_CREATED:
            self._watch_from_payload(payload)  # runs threshold invariant
        elif entry.kind == KIND_WATCH_DELETED:
            if "watch_id" not in payload:
                raise UsageError("watch-deleted payload needs watch_id")
        elif entry.kind == KIND_ALERT_EMITTED:
            alert = self._alert_from_payload(payload)
            if alert.alert_id in self._alert_ids:
                raise UsageError(f"duplicate alert {alert.alert_id}")

    # -- state application (idempotent; shared with replay) -------------

    @staticmethod
    def _point_from_payload(payload: dict) -> ForecastPoint:
        return ForecastPoint(
            conversation_id=payload["conversation_id"],
            after_ordinal=payload["after_ordinal"],
            score=payload["score"],
            scorer_id=payload["scorer_id"],
            computed_at=_parse_dt(payload["computed_at"]),
        )

    @staticmethod
    def _watch_from_payload(payload: dict) -> WatchItem:
        return WatchItem(
            watch_id=payload["watch_id"],
            moderator_id=payload["moderator_id"],
            conversation_id=payload["conversation_id"],
            alert_threshold=payload["alert_threshold"],
            created_at=_parse_dt(payload["created_at"]),
        )

    @staticmethod
    def _alert_from_payload(payload: dict) -> AlertEvent:
        return AlertEvent(
            alert_id=payload["alert_id"],
            watch_id=payload["watch_id"],
            conversation_id=payload["conversation_id"],
            triggering_after_ordinal=payload["triggering_after_ordinal"],
            score_at_trigger=payload["score_at_trigger"],
            emitted_at=_parse_dt(payload["emitted_at"]),
        )

    def _apply(self, entry: EventLogEntry) -> None:
        payload = entry.payload
        if entry.kind == KIND_NEW_COMMENT:
            conv_id = payload["conversation_id"]
            comment = dumpio.comment_from_dict(payload["comment"])
            conversation = self._conversations.get(conv_id)
            if conversation is None:
                conversation = ConversationRecord(
                    conversation_id=conv_id,
                    page_title=payload["page_title"],
                    heading=payload["heading"],
                    comments=(),
                )
            if comment.ordinal == len(conversation.comments) + 1:
                self._conversations[conv_id] = conversation.with_comments(
                    conversation.comments + (comment,)
                )
        elif entry.kind == KIND_FORECAST_POINT:
            point = self._point_from_payload(payload)
            history = self._histories.get(
                point.conversation_id, ForecastHistory(point.conversation_id)
            )
            if point.after_ordinal == len(history.points) + 1:
                self._histories[point.conversation_id] = history.append(point)
        elif entry.kind == KIND_WATCH_CREATED:
            watch = self._watch_from_payload(payload)
            self._watches[watch.watch_id] = watch
        elif entry.kind == KIND_WATCH_DELETED:
            self._watches.pop(payload["watch_id"], None)
        elif entry.kind == KIND_ALERT_EMITTED:
            alert = self._alert_from_payload(payload)
            if alert.alert_id not in self._alert_ids:
                self._alert_ids.add(alert.alert_id)
                self._alerted_pairs.add(
                    (alert.watch_id, alert.triggering_after_ordinal)
                )
                self._alerts.append((entry.sequence_no, alert))

    # -- in-memory, non-evented adjustments ------------------------------

    def set_liveness(self, conversation_id: str, is_live: bool) -> None:
        """Archival mark; recomputed from the page on the next poll, so it
        is intentionally not persisted in the event log."""
        with self._lock:
            conversation = self._conversations.get(conversation_id)
            if conversation is not None and conversation.is_live != is_live:
                self._conversations[conversation_id] = replace(
                    conversation, is_live=is_live
                )

    def update_comment_text(
        self, conversation_id: str, ordinal: int, text: str
    ) -> None:
        """In-place edit of an existing comment's text (no event emitted)."""
        with self._lock:
            conversation = self._conversations.get(conversation_id)
            if conversation is None or not 1 <= ordinal <= len(conversation.comments):
                return
            comments = list(conversation.comments)
            comments[ordinal - 1] = replace(comments[ordinal - 1], text=text)
            self._conversations[conversation_id] = conversation.with_comments(
                tuple(comments)
            )

    # -- reads -----------------------------------------------------------

    def snapshot(self) -> StoreView:
        with self._lock:
            return StoreView(
                sequence_no=self._sequence_no,
                conversations=dict(self._conversations),
                histories=dict(self._histories),
                watches=dict(self._watches),
                alerts=tuple(self._alerts),
            )

    @property
    def alerted_pairs(self) -> set[tuple[str, int]]:
        with self._lock:
            return set(self._alerted_pairs)

    # -- recovery / compaction -------------------------------------------

    def _recover(self) -> None:
        if self._snapshot_path.exists():
            self._load_snapshot(self._snapshot_path)
        if not self._log_path.exists():
            return
        valid_bytes = 0
        with open(self._log_path, "rb") as fh:
            while True:
                header = fh.read(_HEADER.size)
                if len(header) < _HEADER.size:
                    break
                length, crc = _HEADER.unpack(header)
                blob = fh.read(length)
                if len(blob) < length or zlib.crc32(blob) != crc:
                    logger.warning(
                        "log corruption after sequence %d; truncating tail",
                        self._sequence_no,
                    )
                    break
                try:
                    raw = json.loads(blob.decode("utf-8"))
                    entry = EventLogEntry(
                        sequence_no=raw["sequence_no"],
                        kind=raw["kind"],
                        payload=raw["payload"],
                        applied_at=_parse_dt(raw["applied_at"]),
                    )
                except (ValueError, KeyError) as exc:
                    logger.warning(
                        "undecodable log entry after sequence %d (%s); truncating",
                        self._sequence_no, exc,
                    )
                    break
                if entry.sequence_no > self._sequence_no:
                    self._apply(entry)
                    self._sequence_no = entry.sequence_no
                valid_bytes = fh.tell()
        actual = self._log_path.stat().st_size
        if valid_bytes < actual:
            with open(self._log_path, "r+b") as fh:
                fh.truncate(valid_bytes)

    def compact(self) -> None:
        """Fold the log into snapshot.json and reset the log file.

        Every forecast point survives compaction; they are the product
        and cannot be recomputed once scorer or lexicon move on.
        """
        if self._directory is None:
            return
        with self._lock:
            state = {
                "sequence_no": self._sequence_no,
                "conversations": [
                    dumpio.conversation_to_dict(c)
                    for c in self._conversations.values()
                ],
                "histories": [
                    {
                        "conversation_id": h.conversation_id,
                        "points": [point_to_payload(p) for p in h.points],
                    }
                    for h in self._histories.values()
                ],
                "watches": [watch_to_payload(w) for w in self._watches.values()],
                "alerts": [
                    {"sequence_no": seq, **alert_to_payload(a)}
                    for seq, a in self._alerts
                ],
            }
            tmp = self._snapshot_path.with_suffix(".tmp")
            with open(tmp, "w", encoding="utf-8") as fh:
                json.dump(state, fh, ensure_ascii=False)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self._snapshot_path)
            self._log_fh.close()
            self._log_fh = open(self._log_path, "wb")
            self._log_fh.flush()
            os.fsync(self._log_fh.fileno())
            self._log_fh.close()
            self._log_fh = open(self._log_path, "ab")

    def _load_snapshot(self, path: Path) -> None:
        with open(path, "r", encoding="utf-8") as fh:
            state = json.load(fh)
        self._sequence_no = state["sequence_no"]
        for raw in state["conversations"]:
            conversation = dumpio.conversation_from_dict(raw)
            self._conversations[conversation.conversation_id] = conversation
        for raw in state["histories"]:
            history = ForecastHistory(
                raw["conversation_id"],
                tuple(self._point_from_payload(p) for p in raw["points"]),
            )
            self._histories[history.conversation_id] = history
        for raw in state["watches"]:
            watch = self._watch_from_payload(raw)
            self._watches[watch.watch_id] = watch
        for raw in state["alerts"]:
            alert = self._alert_from_payload(raw)
            self._alerts.append((raw["sequence_no"], alert))
            self._alert_ids.add(alert.alert_id)
            self._alerted_pairs.add((alert.watch_id, alert.triggering_after_ordinal))

    def close(self) -> None:
        if self._log_fh is not None:
            self._log_fh.close()
            self._log_fh = None

    # -- dump bridge -------------------------------------------------------

    def export_dump(self, path: str | Path) -> None:
        view = self.snapshot()
        dumpio.dump_to_path(sorted(
            view.conversations.values(), key=lambda c: c.conversation_id
        ), path)

    def import_dump(self, path: str | Path, page_revision_id: int = 0) -> int:
        """Feed a conversation dump in as new-comment events; returns count."""
        imported = 0
        for conversation in dumpio.load_dump(path):
            for comment in conversation.comments:
                self.append_event(
                    KIND_NEW_COMMENT,
                    new_comment_payload(conversation, comment, page_revision_id),
                )
                imported += 1
        return imported
