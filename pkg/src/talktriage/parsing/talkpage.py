"""Full Talk-Page parsing: one conversation per level-2 section.

Deeper subsection headings are treated as plain body lines and merge into
the enclosing conversation. Content ahead of the first level-2 heading is
the page lead and is ignored. Sections without a single signed comment
produce no conversation. Output is deterministic for identical input,
including every id.
"""

import re

from talktriage import ids
from talktriage.parsing.records import ConversationRecord, ParseDiagnostics
from talktriage.parsing.threads import first_signature_timestamp, thread_comments

# exactly level 2: ==Heading== (inner text may not start/end with '=')
HEADING_RE = re.compile(r"^==([^=](?:.*?[^=])?)==\s*$")


def _sections(lines: list[str]) -> tuple[int, list[tuple[str, list[str]]]]:
    """Split page lines into (lead line count, [(heading, body lines)])."""
    sections: list[tuple[str, list[str]]] = []
    heading: str | None = None
    body: list[str] = []
    lead_lines = 0
    for line in lines:
        match = HEADING_RE.match(line)
        if match:
            if heading is not None:
                sections.append((heading, body))
            heading = match.group(1).strip()
            body = []
        elif heading is None:
            lead_lines += 1
        else:
            body.append(line)
    if heading is not None:
        sections.append((heading, body))
    return lead_lines, sections


def parse_talk_page(
    wikitext: str,
    page_title: str,
    diagnostics: ParseDiagnostics | None = None,
) -> list[ConversationRecord]:
    """Parse complete page source into threaded conversations."""
    diag = diagnostics if diagnostics is not None else ParseDiagnostics()
    lead_lines, sections = _sections(wikitext.split("\n"))
    diag.lead_lines_ignored += lead_lines

    conversations: list[ConversationRecord] = []
    seen_ids: set[str] = set()
    for heading, body in sections:
        diag.sections_seen += 1
        signed, first_ts = first_signature_timestamp(body)
        if not signed:
            diag.sections_without_comments += 1
            continue
        conv_id = ids.conversation_id(page_title, heading, first_ts)
        if conv_id in seen_ids:
            # duplicate heading with identical first timestamp: disambiguate
            # by occurrence so both sections keep independent identities
            diag.duplicate_section_keys += 1
            occurrence = 2
            while conv_id in seen_ids:
                conv_id = ids.conversation_id(
                    page_title, heading, f"{first_ts}#{occurrence}"
                )
                occurrence += 1
        seen_ids.add(conv_id)
        comments = thread_comments(body, conv_id)
        diag.undated_signatures += sum(1 for c in comments if c.posted_at is None)
        conversations.append(
            ConversationRecord(
                conversation_id=conv_id,
                page_title=page_title,
                heading=heading,
                comments=tuple(comments),
            )
        )
    return conversations
