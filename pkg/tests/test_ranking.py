from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, strategies as st

from talktriage.errors import ConfigurationError
from talktriage.forecast.history import ForecastHistory, ForecastPoint
from talktriage.parsing.records import CommentRecord, ConversationRecord
from talktriage.ranking import (
    AlertEvent,
    WatchItem,
    assign_risk_bucket,
    build_ranking,
    compute_trend,
    evaluate_watches,
)

NOW = datetime(2021, 6, 10, 12, 0, tzinfo=timezone.utc)


def conversation(conv_id: str, last_post: datetime, count: int = 2) -> ConversationRecord:
    comments = tuple(
        CommentRecord(f"{conv_id}-c{i}", "U", last_post, "t", 0, None, i)
        for i in range(1, count + 1)
    )
    return ConversationRecord(conv_id, "Talk:X", f"H {conv_id}", comments)


def history(conv_id: str, scores: list[float]) -> ForecastHistory:
    points = tuple(
        ForecastPoint(conv_id, i + 1, s, "scorer", NOW) for i, s in enumerate(scores)
    )
    return ForecastHistory(conv_id, points)


def ranking_for(scores: dict[str, list[float]], ages: dict[str, timedelta] | None = None):
    ages = ages or {}
    conversations = [
        conversation(cid, NOW - ages.get(cid, timedelta(hours=1)))
        for cid in scores
    ]
    histories = {cid: history(cid, s) for cid, s in scores.items()}
    return build_ranking(conversations, histories, NOW)


def test_sorted_by_latest_score_descending():
    entries = ranking_for({"A": [0.9], "B": [0.2], "C": [0.5]})
    assert [e.conversation_id for e in entries] == ["A", "C", "B"]


def test_equal_scores_break_by_recency():
    entries = ranking_for(
        {"A": [0.5], "B": [0.5]},
        ages={"A": timedelta(hours=5), "B": timedelta(hours=1)},
    )
    assert [e.conversation_id for e in entries] == ["B", "A"]


def test_full_tie_breaks_by_conversation_id():
    entries = ranking_for({"beta": [0.5], "alpha": [0.5]})
    assert [e.conversation_id for e in entries] == ["alpha", "beta"]


def test_stale_conversation_is_excluded():
    entries = ranking_for(
        {"old": [0.99], "fresh": [0.1]},
        ages={"old": timedelta(days=10), "fresh": timedelta(hours=2)},
    )
    assert [e.conversation_id for e in entries] == ["fresh"]


def test_undated_conversation_is_excluded():
    conv = ConversationRecord(
        "undated", "Talk:X", "H",
        (CommentRecord("c1", "U", None, "t", 0, None, 1),),
    )
    assert build_ranking([conv], {"undated": history("undated", [0.9])}, NOW) == []


def test_not_live_conversation_is_excluded():
    conv = conversation("gone", NOW - timedelta(hours=1)).retired()
    assert build_ranking([conv], {"gone": history("gone", [0.9])}, NOW) == []


def test_conversation_without_history_is_excluded():
    conv = conversation("quiet", NOW - timedelta(hours=1))
    assert build_ranking([conv], {}, NOW) == []


def test_trend_rising_large():
    assert compute_trend(history("A", [0.30, 0.50])) == (
        pytest.approx(0.20), "rising-large"
    )


def test_trend_single_point_is_flat_zero():
    assert compute_trend(history("A", [0.40])) == (0.0, "flat")


def test_trend_falling_small():
    delta, bucket = compute_trend(history("A", [0.50, 0.44]))
    assert delta == pytest.approx(-0.06)
    assert bucket == "falling-small"


@pytest.mark.parametrize(
    "delta,expected_rising,expected_falling",
    [
        (0.049, "flat", "flat"),
        (0.05, "rising-small", "falling-small"),
        (0.149, "rising-small", "falling-small"),
        (0.15, "rising-large", "falling-large"),
    ],
)
def test_trend_bucket_boundaries(delta, expected_rising, expected_falling):
    _, rising = compute_trend(history("A", [0.0, delta]))
    assert rising == expected_rising
    _, falling = compute_trend(history("A", [delta, 0.0]))
    assert falling == expected_falling


def test_risk_buckets_with_defaults():
    assert assign_risk_bucket(0.39) == "low"
    assert assign_risk_bucket(0.4) == "elevated"
    assert assign_risk_bucket(0.64) == "elevated"
    assert assign_risk_bucket(0.65) == "high"  # boundary inclusive upward
    assert assign_risk_bucket(0.99) == "high"


def test_inverted_thresholds_fail_at_startup():
    with pytest.raises(ConfigurationError):
        assign_risk_bucket(0.5, thresholds=(0.7, 0.4))


def make_watch(watch_id: str, conv_id: str, threshold: float) -> WatchItem:
    return WatchItem(watch_id, "mod", conv_id, threshold, NOW)


def point(conv_id: str, ordinal: int, score: float) -> ForecastPoint:
    return ForecastPoint(conv_id, ordinal, score, "scorer", NOW)


def test_watch_fires_at_threshold():
    alerts = evaluate_watches(
        [make_watch("w1", "A", 0.6)], point("A", 3, 0.72), set(), NOW
    )
    assert len(alerts) == 1
    assert alerts[0].triggering_after_ordinal == 3
    assert alerts[0].score_at_trigger == 0.72


def test_watch_below_threshold_stays_quiet():
    assert evaluate_watches(
        [make_watch("w1", "A", 0.6)], point("A", 3, 0.55), set(), NOW
    ) == []


def test_watch_only_matches_its_conversation():
    assert evaluate_watches(
        [make_watch("w1", "B", 0.1)], point("A", 1, 0.9), set(), NOW
    ) == []


def test_reevaluating_the_same_point_is_deduplicated():
    watch = make_watch("w1", "A", 0.6)
    first = evaluate_watches([watch], point("A", 3, 0.72), set(), NOW)
    fired = {(a.watch_id, a.triggering_after_ordinal) for a in first}
    second = evaluate_watches([watch], point("A", 3, 0.72), fired, NOW)
    assert second == []


def test_alert_ids_are_deterministic():
    watch = make_watch("w1", "A", 0.6)
    one = evaluate_watches([watch], point("A", 3, 0.72), set(), NOW)
    two = evaluate_watches([watch], point("A", 3, 0.72), set(), NOW)
    assert one[0].alert_id == two[0].alert_id


# grid-valued scores: a strictly monotone float transform keeps distinct
# values distinct, so the property is about ordering, not float collapse
scores_strategy = st.dictionaries(
    st.sampled_from([f"conv{i}" for i in range(8)]),
    st.integers(0, 1000).map(lambda i: i / 1000),
    min_size=1,
)


@given(scores=scores_strategy, exponent=st.floats(0.2, 3.0))
def test_order_is_invariant_under_monotone_score_transforms(scores, exponent):
    base = ranking_for({cid: [s] for cid, s in scores.items()})
    transformed = ranking_for({cid: [s**exponent] for cid, s in scores.items()})
    assert [e.conversation_id for e in base] == [
        e.conversation_id for e in transformed
    ]


@given(scores=scores_strategy)
def test_every_live_conversation_appears_exactly_once(scores):
    entries = ranking_for({cid: [s] for cid, s in scores.items()})
    listed = [e.conversation_id for e in entries]
    assert sorted(listed) == sorted(scores)
    assert len(set(listed)) == len(listed)
