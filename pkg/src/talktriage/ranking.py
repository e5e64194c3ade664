"""Triage ranking, trend/risk buckets, and threshold watches.

The ranking lists live conversations sorted by their latest risk score,
highest first. Liveness here means recent enough: conversations whose
last activity is older than the staleness window (or undatable) drop out.
Ties break by more recent activity, then lexicographic conversation id,
so the order is total and pagination is deterministic.
"""

from dataclasses import dataclass
from datetime import datetime, timedelta

from talktriage.errors import ConfigurationError
from talktriage.forecast.history import ForecastHistory, ForecastPoint
from talktriage.ids import alert_id as make_alert_id
from talktriage.parsing.records import ConversationRecord

TREND_FLAT = "flat"
TREND_RISING_SMALL = "rising-small"
TREND_RISING_LARGE = "rising-large"
TREND_FALLING_SMALL = "falling-small"
TREND_FALLING_LARGE = "falling-large"

RISK_LOW = "low"
RISK_ELEVATED = "elevated"
RISK_HIGH = "high"

DEFAULT_TREND_THRESHOLDS = (0.05, 0.15)
DEFAULT_RISK_THRESHOLDS = (0.4, 0.65)
DEFAULT_STALENESS = timedelta(hours=72)


@dataclass(frozen=True)
class RankingEntry:
    conversation_id: str
    page_title: str
    heading: str
    latest_score: float
    score_delta: float  # 0.0 for single-point histories
    trend_bucket: str
    risk_bucket: str
    comment_count: int
    age: timedelta  # since last activity
    is_live: bool


@dataclass(frozen=True)
class WatchItem:
    watch_id: str
    moderator_id: str
    conversation_id: str
    alert_threshold: float
    created_at: datetime

    def __post_init__(self):
        if not 0.0 <= self.alert_threshold <= 1.0:
            raise ValueError(f"alert_threshold outside [0, 1]: {self.alert_threshold}")


@dataclass(frozen=True)
class AlertEvent:
    alert_id: str
    watch_id: str
    conversation_id: str
    triggering_after_ordinal: int
    score_at_trigger: float
    emitted_at: datetime


def compute_trend(
    history: ForecastHistory,
    thresholds: tuple[float, float] = DEFAULT_TREND_THRESHOLDS,
) -> tuple[float, str]:
    """Delta between the two newest points and its bucket.

    |delta| < small -> flat; small <= |delta| < large -> *-small;
    |delta| >= large -> *-large; the sign picks rising vs falling.
    """
    small, large = thresholds
    points = history.points
    if len(points) < 2:
        return 0.0, TREND_FLAT
    delta = points[-1].score - points[-2].score
    magnitude = abs(delta)
    if magnitude < small:
        return delta, TREND_FLAT
    if magnitude < large:
        return delta, TREND_RISING_SMALL if delta > 0 else TREND_FALLING_SMALL
    return delta, TREND_RISING_LARGE if delta > 0 else TREND_FALLING_LARGE


def validate_risk_thresholds(thresholds: tuple[float, float]) -> None:
    elevated, high = thresholds
    if not 0.0 < elevated < high < 1.0:
        raise ConfigurationError(
            f"risk thresholds must satisfy 0 < elevated < high < 1, got {thresholds}"
        )


def assign_risk_bucket(
    latest_score: float,
    thresholds: tuple[float, float] = DEFAULT_RISK_THRESHOLDS,
) -> str:
    """Boundaries belong to the higher bucket: score == t_high is high."""
    validate_risk_thresholds(thresholds)
    elevated, high = thresholds
    if latest_score < elevated:
        return RISK_LOW
    if latest_score < high:
        return RISK_ELEVATED
    return RISK_HIGH


def build_ranking(
    conversations: list[ConversationRecord],
    histories: dict[str, ForecastHistory],
    now: datetime,
    staleness: timedelta = DEFAULT_STALENESS,
    risk_thresholds: tuple[float, float] = DEFAULT_RISK_THRESHOLDS,
    trend_thresholds: tuple[float, float] = DEFAULT_TREND_THRESHOLDS,
) -> list[RankingEntry]:
    """Sorted triage entries for every live conversation with a history."""
    validate_risk_thresholds(risk_thresholds)
    entries: list[RankingEntry] = []
    for conversation in conversations:
        history = histories.get(conversation.conversation_id)
        if history is None or not history.points:
            continue
        if not conversation.is_live:
            continue
        last_activity = conversation.last_activity
        if last_activity is None:
            continue  # undatable; cannot qualify as recent
        age = now - last_activity
        if age > staleness:
            continue
        delta, trend = compute_trend(history, trend_thresholds)
        latest = history.points[-1].score
        entries.append(
            RankingEntry(
                conversation_id=conversation.conversation_id,
                page_title=conversation.page_title,
                heading=conversation.heading,
                latest_score=latest,
                score_delta=delta,
                trend_bucket=trend,
                risk_bucket=assign_risk_bucket(latest, risk_thresholds),
                comment_count=len(conversation.comments),
                age=age,
                is_live=True,
            )
        )
    entries.sort(
        key=lambda e: (-e.latest_score, e.age, e.conversation_id)
    )
    return entries


def entry_to_dict(entry: RankingEntry) -> dict:
    """Wire shape of one ranking row; field names are part of the API contract."""
    return {
        "conversation_id": entry.conversation_id,
        "page_title": entry.page_title,
        "heading": entry.heading,
        "latest_score": round(entry.latest_score, 6),
        "score_delta": round(entry.score_delta, 6),
        "trend_bucket": entry.trend_bucket,
        "risk_bucket": entry.risk_bucket,
        "comment_count": entry.comment_count,
        "age": entry.age.total_seconds(),
        "is_live": entry.is_live,
    }


def evaluate_watches(
    watches: list[WatchItem],
    point: ForecastPoint,
    already_alerted: set[tuple[str, int]],
    now: datetime,
) -> list[AlertEvent]:
    """Alerts for watches whose threshold the new point reaches.

    ``already_alerted`` holds (watch_id, after_ordinal) pairs that fired
    before; re-evaluating the same point (crash-recovery replay) emits
    nothing new, and alert ids are deterministic, so replayed logs
    reproduce identical alert sets.
    """
    alerts: list[AlertEvent] = []
    for watch in watches:
        if watch.conversation_id != point.conversation_id:
            continue
        if point.score < watch.alert_threshold:
            continue
        key = (watch.watch_id, point.after_ordinal)
        if key in already_alerted:
            continue
        alerts.append(
            AlertEvent(
                alert_id=make_alert_id(watch.watch_id, point.after_ordinal),
                watch_id=watch.watch_id,
                conversation_id=point.conversation_id,
                triggering_after_ordinal=point.after_ordinal,
                score_at_trigger=point.score,
                emitted_at=now,
            )
        )
    return alerts
