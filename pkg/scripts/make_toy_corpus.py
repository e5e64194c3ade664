#!/usr/bin/env python3
"""Build the labeled toy corpus used by the evaluation harness tests.

Twenty short conversations, eight of which turn antisocial (never on the
very first comment, so a forecast strictly before the first bad comment
is always possible). This is a test asset, not a research dataset.
"""

import json
from pathlib import Path

OUT = Path(__file__).parent.parent / "tests" / "data" / "corpus" / "toy_corpus.ndjson"

CIVIL = [
    "Thanks for taking a look at this.",
    "I added two more references from the journal archive.",
    "Good point, I reworded the paragraph.",
    "Could you double check the date formatting?",
    "Looks consistent with the style guide now.",
    "Agreed, merging the duplicate sections.",
    "The map caption still needs a source.",
    "Done, see the latest diff.",
]

HOSTILE = [
    "You are a pathetic liar and everyone knows it!!",
    "Stop your vandalism, this is pure garbage!",
    "Only an idiot would keep reverting this. YOU are trolling!!",
    "Your nonsense edits are worthless propaganda!!",
]

# (conversation length, first antisocial ordinal or None)
PLAN = [
    (3, None), (4, 2), (5, None), (3, 3), (6, None),
    (4, None), (5, 4), (3, None), (4, 3), (5, None),
    (6, 5), (3, None), (4, None), (5, 2), (4, None),
    (6, 6), (3, None), (5, 3), (4, None), (3, None),
]

AUTHORS = ["Asha", "Bram", "Chen", "Devi", "Egon", "Fern"]


def build():
    rows = []
    for index, (length, first_bad) in enumerate(PLAN, start=1):
        conv_id = f"corpus-{index:03d}"
        comments = []
        for ordinal in range(1, length + 1):
            bad = first_bad is not None and ordinal >= first_bad
            pool = HOSTILE if bad else CIVIL
            text = pool[(index * 3 + ordinal) % len(pool)]
            comments.append(
                {
                    "comment_id": f"{conv_id}-c{ordinal}",
                    "author": AUTHORS[(index + ordinal) % len(AUTHORS)],
                    "posted_at": f"2021-06-{(index % 27) + 1:02d}T{9 + ordinal:02d}:00:00Z",
                    "text": text,
                    "indent_depth": min(ordinal - 1, 3),
                    "parent_comment_id": f"{conv_id}-c{ordinal - 1}" if ordinal > 1 else None,
                    "ordinal": ordinal,
                    "is_antisocial": bad,
                }
            )
        rows.append(
            {
                "conversation_id": conv_id,
                "page_title": "Talk:Toy corpus",
                "heading": f"Thread {index}",
                "is_live": True,
                "last_activity": comments[-1]["posted_at"],
                "derails": first_bad is not None,
                "comments": comments,
            }
        )
    return rows


def main() -> None:
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        for row in build():
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    derailing = sum(1 for _, bad in PLAN if bad is not None)
    print(f"{len(PLAN)} conversations, {derailing} derailing -> {OUT}")


if __name__ == "__main__":
    main()
