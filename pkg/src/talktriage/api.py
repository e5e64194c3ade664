"""HTTP API for the moderator UI.

All endpoints live under /api, speak JSON, and require a bearer token
from the service config. Every response is computed from one store
snapshot, so fields shared between endpoints never disagree within a
request. Exact shapes are documented in docs/formats.md; they are the
contract the web client and the conformance tests program against.
"""

from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import Callable

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Response

from talktriage import __version__
from talktriage.forecast.history import ForecastHistory, ForecastPoint
from talktriage.ids import watch_id as make_watch_id
from talktriage.parsing.records import CommentRecord, ConversationRecord
from talktriage.ranking import (
    DEFAULT_RISK_THRESHOLDS,
    DEFAULT_STALENESS,
    DEFAULT_TREND_THRESHOLDS,
    WatchItem,
    build_ranking,
    entry_to_dict,
    validate_risk_thresholds,
)
from talktriage.store import (
    KIND_WATCH_CREATED,
    KIND_WATCH_DELETED,
    Store,
    StoreView,
    alert_to_payload,
    watch_to_payload,
)


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def _iso(dt: datetime | None) -> str | None:
    return dt.isoformat().replace("+00:00", "Z") if dt else None


@dataclass
class ServiceContext:
    store: Store
    tokens: dict  # bearer token -> moderator_id
    scorer_id: str
    staleness: timedelta = DEFAULT_STALENESS
    risk_thresholds: tuple = DEFAULT_RISK_THRESHOLDS
    trend_thresholds: tuple = DEFAULT_TREND_THRESHOLDS
    pages_tracked: list = field(default_factory=list)
    poll_times_fn: Callable[[], dict] | None = None
    clock: Callable[[], datetime] = _utcnow

    def poll_times(self) -> dict:
        return self.poll_times_fn() if self.poll_times_fn else {}


def point_to_dict(point: ForecastPoint) -> dict:
    return {
        "after_ordinal": point.after_ordinal,
        "score": point.score,
        "scorer_id": point.scorer_id,
        "computed_at": _iso(point.computed_at),
    }


def comment_with_forecast(
    comment: CommentRecord, history: ForecastHistory | None
) -> dict:
    point = None
    if history and comment.ordinal <= len(history.points):
        point = history.points[comment.ordinal - 1]
    return {
        "comment_id": comment.comment_id,
        "author": comment.author,
        "posted_at": _iso(comment.posted_at),
        "text": comment.text,
        "indent_depth": comment.indent_depth,
        "parent_comment_id": comment.parent_comment_id,
        "ordinal": comment.ordinal,
        "forecast": point_to_dict(point) if point else None,
    }


def conversation_to_response(
    conversation: ConversationRecord, history: ForecastHistory | None
) -> dict:
    return {
        "conversation_id": conversation.conversation_id,
        "page_title": conversation.page_title,
        "heading": conversation.heading,
        "is_live": conversation.is_live,
        "last_activity": _iso(conversation.last_activity),
        "comments": [
            comment_with_forecast(c, history) for c in conversation.comments
        ],
    }


def ranking_response(ctx: ServiceContext, view: StoreView, now: datetime,
                     limit: int, offset: int) -> dict:
    entries = build_ranking(
        list(view.conversations.values()),
        view.histories,
        now,
        staleness=ctx.staleness,
        risk_thresholds=ctx.risk_thresholds,
        trend_thresholds=ctx.trend_thresholds,
    )
    page = entries[offset : offset + limit]
    return {
        "generated_at": _iso(now),
        "entries": [entry_to_dict(e) for e in page],
    }


def create_app(ctx: ServiceContext) -> FastAPI:
    validate_risk_thresholds(ctx.risk_thresholds)
    app = FastAPI(title="talktriage", version=__version__)

    def authenticate(authorization: str | None = Header(default=None)) -> str:
        if authorization and authorization.startswith("Bearer "):
            moderator = ctx.tokens.get(authorization[len("Bearer ") :])
            if moderator:
                return moderator
        raise HTTPException(status_code=401, detail="unauthorized")

    @app.get("/api/ranking")
    def get_ranking(
        moderator: str = Depends(authenticate),
        limit: int = Query(default=100, ge=1, le=1000),
        offset: int = Query(default=0, ge=0),
    ):
        return ranking_response(ctx, ctx.store.snapshot(), ctx.clock(), limit, offset)

    @app.get("/api/conversations/{conversation_id}")
    def get_conversation(conversation_id: str, moderator: str = Depends(authenticate)):
        view = ctx.store.snapshot()
        conversation = view.conversations.get(conversation_id)
        if conversation is None:
            raise HTTPException(status_code=404, detail="unknown conversation")
        return conversation_to_response(
            conversation, view.histories.get(conversation_id)
        )

    @app.get("/api/conversations/{conversation_id}/history")
    def get_history(conversation_id: str, moderator: str = Depends(authenticate)):
        view = ctx.store.snapshot()
        if conversation_id not in view.conversations:
            raise HTTPException(status_code=404, detail="unknown conversation")
        history = view.histories.get(conversation_id)
        return {
            "conversation_id": conversation_id,
            "points": [point_to_dict(p) for p in history.points] if history else [],
        }

    @app.post("/api/watches", status_code=201)
    def create_watch(body: dict, moderator: str = Depends(authenticate)):
        conversation_id = body.get("conversation_id")
        threshold = body.get("alert_threshold")
        if not isinstance(conversation_id, str) or not isinstance(
            threshold, (int, float)
        ) or isinstance(threshold, bool) or not 0.0 <= float(threshold) <= 1.0:
            raise HTTPException(
                status_code=422,
                detail="body must carry conversation_id and alert_threshold in [0, 1]",
            )
        view = ctx.store.snapshot()
        if conversation_id not in view.conversations:
            raise HTTPException(status_code=404, detail="unknown conversation")
        watch = WatchItem(
            watch_id=make_watch_id(moderator, conversation_id),
            moderator_id=moderator,
            conversation_id=conversation_id,
            alert_threshold=float(threshold),
            created_at=ctx.clock(),
        )
        ctx.store.append_event(KIND_WATCH_CREATED, watch_to_payload(watch))
        return watch_to_payload(watch)

    @app.delete("/api/watches/{watch_id}", status_code=204)
    def delete_watch(watch_id: str, moderator: str = Depends(authenticate)):
        view = ctx.store.snapshot()
        watch = view.watches.get(watch_id)
        if watch is None or watch.moderator_id != moderator:
            raise HTTPException(status_code=404, detail="unknown watch")
        ctx.store.append_event(KIND_WATCH_DELETED, {"watch_id": watch_id})
        return Response(status_code=204)

    @app.get("/api/alerts")
    def get_alerts(
        moderator: str = Depends(authenticate),
        since: int = Query(default=0, ge=0),
    ):
        view = ctx.store.snapshot()
        mine = []
        cursor = since
        for sequence_no, alert in view.alerts:
            if sequence_no <= since:
                continue
            cursor = max(cursor, sequence_no)
            watch = view.watches.get(alert.watch_id)
            if watch is None or watch.moderator_id != moderator:
                continue  # deleted or someone else's
            mine.append(alert_to_payload(alert))
        return {"alerts": mine, "cursor": cursor}

    @app.get("/api/health")
    def get_health(moderator: str = Depends(authenticate)):
        return {
            "status": "ok",
            "version": __version__,
            "scorer_id": ctx.scorer_id,
            "pages": list(ctx.pages_tracked),
            "last_poll": ctx.poll_times(),
        }

    return app
