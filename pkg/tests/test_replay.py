import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from talktriage.errors import CorpusValidationError
from talktriage.forecast.scorer import builtin_descriptor
from talktriage.replay import (
    ConstantEvalScorer,
    DescriptorEvalScorer,
    LabeledConversation,
    OracleEvalScorer,
    load_corpus,
    replay_corpus,
)
from talktriage.parsing.records import CommentRecord, ConversationRecord


def test_toy_corpus_loads_and_is_consistent(corpus_path):
    corpus = load_corpus(corpus_path)
    assert len(corpus) == 20
    derailing = [c for c in corpus if c.derails]
    assert len(derailing) == 8
    for item in corpus:
        assert item.derails == any(item.labels)
        if item.derails:
            # derailment is forecastable: never the very first comment
            assert item.first_antisocial_ordinal >= 2


def test_oracle_scorer_is_perfect(corpus_path):
    corpus = load_corpus(corpus_path)
    report = replay_corpus(corpus, OracleEvalScorer(), threshold=0.5)
    assert report.precision == 1.0
    assert report.recall == 1.0
    assert report.f1 == 1.0
    assert report.mean_lead_time == 1.0  # alert fires one comment ahead
    assert report.true_positives == 8
    assert report.true_negatives == 12


def test_constant_zero_scorer_never_flags(corpus_path):
    corpus = load_corpus(corpus_path)
    report = replay_corpus(corpus, ConstantEvalScorer(0.0), threshold=0.5)
    assert report.recall == 0.0
    assert report.f1 == 0.0
    assert report.true_positives == 0
    assert report.false_positives == 0


def test_constant_one_scorer_has_base_rate_precision(corpus_path):
    corpus = load_corpus(corpus_path)
    report = replay_corpus(corpus, ConstantEvalScorer(1.0), threshold=0.5)
    assert report.recall == 1.0
    flagged = report.true_positives + report.false_positives
    base_rate = Fraction(sum(1 for c in corpus if c.derails), len(corpus))
    assert Fraction(report.true_positives, flagged) == base_rate
    assert report.precision == pytest.approx(float(base_rate))


def test_counts_sum_to_corpus_size(corpus_path):
    corpus = load_corpus(corpus_path)
    report = replay_corpus(corpus, DescriptorEvalScorer(builtin_descriptor()), 0.5)
    total = (
        report.true_positives + report.false_positives
        + report.true_negatives + report.false_negatives
    )
    assert total == len(corpus)


def test_online_path_equals_independent_offline_scoring(corpus_path):
    from talktriage.forecast.scorer import score_prefix

    corpus = load_corpus(corpus_path)
    descriptor = builtin_descriptor()
    scorer = DescriptorEvalScorer(descriptor)
    for item in corpus[:5]:
        online = scorer.prefix_scores(item)
        offline = [
            round(score_prefix(descriptor, item.conversation, k), 6)
            for k in range(1, len(item.conversation.comments) + 1)
        ]
        assert online == offline


def test_report_is_deterministic_and_byte_identical(corpus_path):
    corpus = load_corpus(corpus_path)
    scorer = DescriptorEvalScorer(builtin_descriptor())
    one = replay_corpus(corpus, scorer, 0.5).to_json()
    two = replay_corpus(load_corpus(corpus_path), DescriptorEvalScorer(builtin_descriptor()), 0.5).to_json()
    assert one == two


def test_parallel_mode_matches_sequential(corpus_path):
    corpus = load_corpus(corpus_path)
    sequential = replay_corpus(corpus, DescriptorEvalScorer(builtin_descriptor()), 0.4)
    parallel = replay_corpus(
        corpus, DescriptorEvalScorer(builtin_descriptor()), 0.4, parallel=True
    )
    assert sequential == parallel


def test_tsv_rendering_round_trips_the_fields(corpus_path):
    corpus = load_corpus(corpus_path)
    report = replay_corpus(corpus, OracleEvalScorer(), 0.5)
    header, row = report.to_tsv().splitlines()
    rendered = dict(zip(header.split("\t"), row.split("\t")))
    assert rendered["f1"] == "1.0"
    assert rendered["scorer_id"] == "oracle"


def test_corpus_with_label_count_mismatch_is_rejected(tmp_path):
    record = {
        "conversation_id": "bad-1",
        "page_title": "Talk:X",
        "heading": "H",
        "is_live": True,
        "last_activity": None,
        "derails": True,
        "comments": [
            {
                "comment_id": "c1", "author": "U", "posted_at": None,
                "text": "fine", "indent_depth": 0, "parent_comment_id": None,
                "ordinal": 1,  # is_antisocial missing entirely
            }
        ],
    }
    path = tmp_path / "bad.ndjson"
    path.write_text(json.dumps(record) + "\n")
    with pytest.raises(CorpusValidationError) as excinfo:
        load_corpus(path)
    assert "bad-1" in excinfo.value.conversation_ids


def test_derails_flag_must_match_labels(tmp_path):
    record = {
        "conversation_id": "bad-2",
        "page_title": "Talk:X",
        "heading": "H",
        "is_live": True,
        "last_activity": None,
        "derails": True,  # inconsistent: no label is true
        "comments": [
            {
                "comment_id": "c1", "author": "U", "posted_at": None,
                "text": "fine", "indent_depth": 0, "parent_comment_id": None,
                "ordinal": 1, "is_antisocial": False,
            }
        ],
    }
    path = tmp_path / "bad.ndjson"
    path.write_text(json.dumps(record) + "\n")
    with pytest.raises(CorpusValidationError):
        load_corpus(path)


def _labeled(labels: list[bool]) -> LabeledConversation:
    comments = tuple(
        CommentRecord(f"c{i}", "U", None, f"t{i}", 0, None, i)
        for i in range(1, len(labels) + 1)
    )
    return LabeledConversation(
        ConversationRecord("lc-1", "Talk:X", "H", comments), tuple(labels)
    )


class _ScriptedScorer:
    scorer_id = "scripted"

    def __init__(self, table: dict[str, list[float]]):
        self.table = table

    def prefix_scores(self, item):
        return self.table[item.conversation.conversation_id]


def test_late_alert_does_not_count_as_forecast():
    # scores only spike on the antisocial comment itself: detection, not
    # forecasting, so the conversation counts as missed
    item = _labeled([False, False, True])
    scorer = _ScriptedScorer({"lc-1": [0.0, 0.0, 1.0]})
    report = replay_corpus([item], scorer, threshold=0.5)
    assert report.true_positives == 0
    assert report.false_negatives == 1


def test_lead_time_counts_comments_of_warning():
    item = _labeled([False, False, False, True])  # first bad at ordinal 4
    scorer = _ScriptedScorer({"lc-1": [0.9, 0.0, 0.0, 0.0]})  # alert after c1
    report = replay_corpus([item], scorer, threshold=0.5)
    assert report.true_positives == 1
    assert report.mean_lead_time == 3.0  # ordinal 4 - prefix 1


corpus_strategy = st.lists(
    st.lists(st.booleans(), min_size=1, max_size=6), min_size=1, max_size=12
)
score_tables = st.data()


@settings(max_examples=150)
@given(shapes=corpus_strategy, data=score_tables)
def test_raising_the_threshold_never_raises_recall(shapes, data):
    corpus = []
    tables = {}
    for index, labels in enumerate(shapes):
        comments = tuple(
            CommentRecord(f"c{i}", "U", None, f"t{i}", 0, None, i)
            for i in range(1, len(labels) + 1)
        )
        conv_id = f"rand-{index}"
        corpus.append(
            LabeledConversation(
                ConversationRecord(conv_id, "Talk:X", "H", comments), tuple(labels)
            )
        )
        tables[conv_id] = data.draw(
            st.lists(
                st.integers(0, 20).map(lambda i: i / 20),
                min_size=len(labels), max_size=len(labels),
            )
        )
    scorer = _ScriptedScorer(tables)
    recalls = [
        replay_corpus(corpus, scorer, threshold=i / 20).recall for i in range(21)
    ]
    assert all(a >= b for a, b in zip(recalls, recalls[1:]))
