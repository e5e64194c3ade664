from talktriage.parsing.events import detect_new_comments, retired_conversations
from talktriage.parsing.talkpage import parse_talk_page

PAGE = "Talk:Example article"

BASE = (
    "== Topic ==\n"
    "opening remark [[User:Ada|Ada]] 11:00, 9 June 2021 (UTC)\n"
)
ONE_REPLY = BASE + ":first reply [[User:Ben|Ben]] 11:10, 9 June 2021 (UTC)\n"


def test_single_append_emits_one_event():
    previous = parse_talk_page(BASE, PAGE)
    current = parse_talk_page(ONE_REPLY, PAGE)
    events = detect_new_comments(previous, current, page_revision_id=7)
    assert len(events) == 1
    assert events[0].comment.ordinal == 2
    assert events[0].comment.author == "Ben"
    assert events[0].page_revision_id == 7


def test_identical_parses_emit_nothing():
    parsed = parse_talk_page(ONE_REPLY, PAGE)
    assert detect_new_comments(parsed, parsed, 8) == []


def test_new_conversation_emits_all_its_comments():
    current = parse_talk_page(ONE_REPLY, PAGE)
    events = detect_new_comments([], current, 9)
    assert [e.comment.ordinal for e in events] == [1, 2]


def test_edit_plus_append_emits_only_the_append():
    previous = parse_talk_page(ONE_REPLY, PAGE)
    edited = (
        "== Topic ==\n"
        "opening remark, now reworded [[User:Ada|Ada]] 11:00, 9 June 2021 (UTC)\n"
        ":first reply [[User:Ben|Ben]] 11:10, 9 June 2021 (UTC)\n"
        "::third thought [[User:Cyd|Cyd]] 11:20, 9 June 2021 (UTC)\n"
    )
    current = parse_talk_page(edited, PAGE)
    events = detect_new_comments(previous, current, 10)

    # set-difference oracle over (ordinal, text): exactly the appended pair is new
    before_pairs = {(c.ordinal, c.text) for c in previous[0].comments}
    after_pairs = {(c.ordinal, c.text) for c in current[0].comments}
    fresh_ordinals = {
        ordinal for ordinal, _ in after_pairs - before_pairs
    } - {ordinal for ordinal, _ in before_pairs}
    assert fresh_ordinals == {3}

    assert [e.comment.ordinal for e in events] == [3]
    assert events[0].comment.author == "Cyd"


def test_vanished_conversation_is_reported_retired():
    previous = parse_talk_page(ONE_REPLY, PAGE)
    assert detect_new_comments(previous, [], 11) == []
    assert retired_conversations(previous, []) == [previous[0].conversation_id]


def test_replaying_revisions_yields_one_event_per_comment():
    revisions = [
        BASE,
        ONE_REPLY,
        ONE_REPLY + "::more [[User:Cyd|Cyd]] 11:20, 9 June 2021 (UTC)\n",
    ]
    previous = []
    seen = []
    for revision_id, text in enumerate(revisions, start=1):
        current = parse_talk_page(text, PAGE)
        seen.extend(detect_new_comments(previous, current, revision_id))
        previous = current
    assert [e.comment.ordinal for e in seen] == [1, 2, 3]
    assert [e.comment.author for e in seen] == ["Ada", "Ben", "Cyd"]
