"""Signature recognition.

A line is signed when it carries a ``[[User:NAME|...]]`` or
``[[User talk:NAME|...]]`` link followed, possibly with interleaving
decoration, by a timestamp shaped like ``HH:MM, D Month YYYY (UTC)``.
When several qualify, the last (link, timestamp) pair on the line wins.
"""

import re
from dataclasses import dataclass
from datetime import datetime, timezone

# 12:03, 5 June 2021 (UTC) -- the default English-Wikipedia signature stamp
TIMESTAMP_RE = re.compile(
    r"(\d{1,2}):(\d{2}), (\d{1,2}) ([A-Z][a-z]+) (\d{4}) \(UTC\)"
)

USER_LINK_RE = re.compile(
    r"\[\[\s*[Uu]ser(?:[ _][Tt]alk)?\s*:\s*([^|\]#/]+?)\s*(?:[|#/][^\]]*)?\]\]"
)

_MONTHS = {
    "January": 1, "February": 2, "March": 3, "April": 4,
    "May": 5, "June": 6, "July": 7, "August": 8,
    "September": 9, "October": 10, "November": 11, "December": 12,
}

# Characters allowed between adjacent links of one signature cluster
# (e.g. "[[User:A|A]] ([[User talk:A|talk]])").
_SEPARATORS = set(" \t()|,.;:-–—·•'\"*")


@dataclass(frozen=True)
class Signature:
    author: str
    posted_at: datetime | None
    strip_start: int  # slice of the line occupied by the signature tail
    strip_end: int


def _normalize_username(raw: str) -> str:
    name = raw.replace("_", " ").strip()
    return name[:1].upper() + name[1:] if name else name


def _parse_timestamp(match: re.Match) -> datetime | None:
    month = _MONTHS.get(match.group(4))
    if month is None:
        return None
    try:
        return datetime(
            int(match.group(5)), month, int(match.group(3)),
            int(match.group(1)), int(match.group(2)), tzinfo=timezone.utc,
        )
    except ValueError:
        return None


def find_signature(line: str) -> Signature | None:
    """Locate the last signature on a physical line, with its strip span."""
    timestamps = list(TIMESTAMP_RE.finditer(line))
    links = list(USER_LINK_RE.finditer(line))
    if not timestamps or not links:
        return None
    for ts in reversed(timestamps):
        before = [m for m in links if m.end() <= ts.start()]
        if not before:
            continue
        author_link = before[-1]
        # extend backwards over directly adjacent links (talk/contribs decoration)
        first = len(before) - 1
        while first > 0:
            gap = line[before[first - 1].end() : before[first].start()]
            if gap and not all(ch in _SEPARATORS for ch in gap):
                break
            first -= 1
        return Signature(
            author=_normalize_username(author_link.group(1)),
            posted_at=_parse_timestamp(ts),
            strip_start=before[first].start(),
            strip_end=ts.end(),
        )
    return None


def extract_signature(line: str) -> tuple[str, datetime | None] | None:
    """Return (author, posted_at) for a signed line, else None."""
    sig = find_signature(line)
    if sig is None:
        return None
    return sig.author, sig.posted_at
