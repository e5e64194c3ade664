"""Comment segmentation and reply threading for one section body.

A comment is a maximal run of lines ending in a signature line. Lines
after the last signature of a section are trailing material and get
appended to the preceding comment's text (they do not contribute to its
identity hash, so appending to a section never changes existing ids).
A section with no signature at all yields no comments.
"""

from dataclasses import dataclass, replace
from datetime import datetime

from talktriage import ids
from talktriage.parsing.records import CommentRecord
from talktriage.parsing.signatures import find_signature

INDENT_CHARS = ":*#"


def indent_depth(line: str) -> int:
    """Count of leading ':' / '*' / '#' characters."""
    depth = 0
    for ch in line:
        if ch in INDENT_CHARS:
            depth += 1
        else:
            break
    return depth


@dataclass(frozen=True)
class _Run:
    author: str
    posted_at: datetime | None
    body: str  # signed-run text, signature stripped; identity anchor
    depth: int


def _segment(section_lines: list[str]) -> tuple[list[_Run], str]:
    """Split a section body into signed runs plus trailing unsigned material."""
    runs: list[_Run] = []
    buffer: list[str] = []
    for line in section_lines:
        sig = find_signature(line)
        if sig is None:
            buffer.append(line)
            continue
        stripped = (line[: sig.strip_start] + line[sig.strip_end :]).rstrip()
        buffer.append(stripped)
        first_line = buffer[0]
        runs.append(
            _Run(
                author=sig.author,
                posted_at=sig.posted_at,
                body="\n".join(buffer).strip(),
                depth=indent_depth(first_line),
            )
        )
        buffer = []
    return runs, "\n".join(buffer).strip()


def _iso(dt: datetime | None) -> str:
    return dt.isoformat().replace("+00:00", "Z") if dt else ""


def first_signature_timestamp(section_lines: list[str]) -> tuple[bool, str]:
    """(section has any signature, ISO timestamp of the first one or '')."""
    for line in section_lines:
        sig = find_signature(line)
        if sig is not None:
            return True, _iso(sig.posted_at)
    return False, ""


def thread_comments(section_lines: list[str], conv_id: str = "") -> list[CommentRecord]:
    """Thread one section body into ordered comments.

    A comment's parent is the nearest preceding comment with strictly
    smaller indent depth; depth-0 comments have no parent.
    """
    runs, trailing = _segment(section_lines)
    records: list[CommentRecord] = []
    for index, run in enumerate(runs):
        cid = ids.comment_id(conv_id, run.author, _iso(run.posted_at), run.body)
        parent_id = None
        for earlier in reversed(records):
            if earlier.indent_depth < run.depth:
                parent_id = earlier.comment_id
                break
        records.append(
            CommentRecord(
                comment_id=cid,
                author=run.author,
                posted_at=run.posted_at,
                text=run.body,
                indent_depth=run.depth,
                parent_comment_id=parent_id,
                ordinal=index + 1,
            )
        )
    if records and trailing:
        last = records[-1]
        records[-1] = replace(last, text=last.text + "\n" + trailing)
    return records
