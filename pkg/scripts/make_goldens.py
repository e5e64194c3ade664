#!/usr/bin/env python3
"""Regenerate the golden conversation dumps for the parser fixture suite.

Run after intentionally changing parser behavior, then review the diff
line by line; the goldens are the reference the tests compare against.
"""

from pathlib import Path

from talktriage.parsing import dumpio
from talktriage.parsing.talkpage import parse_talk_page

PAGE_TITLE = "Talk:Example article"

ROOT = Path(__file__).parent.parent
PAGES = ROOT / "tests" / "data" / "pages"
GOLDEN = ROOT / "tests" / "data" / "golden"


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for fixture in sorted(PAGES.glob("*.wikitext")):
        conversations = parse_talk_page(
            fixture.read_text(encoding="utf-8"), PAGE_TITLE
        )
        out = GOLDEN / (fixture.stem + ".ndjson")
        dumpio.dump_to_path(conversations, out)
        print(f"{fixture.stem}: {len(conversations)} conversation(s) -> {out.name}")


if __name__ == "__main__":
    main()
