"""Revision snapshots and the transports that produce them.

Two interchangeable sources feed the poller:

* ``MediaWikiRevisionSource`` — read-only queries against a MediaWiki
  Action API endpoint. No write operation is ever issued.
* ``FixtureRevisionSource`` — replays snapshots recorded on disk, one
  revision per fetch, so the whole pipeline runs hermetically in tests
  and in the replay CLI.

Fixture layout: one directory per page holding ``<revision_id>.wikitext``
files plus a ``meta.tsv`` of tab-separated ``revision_id<TAB>ISO-8601``
rows in replay order.
"""

import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import requests

from talktriage import __version__
from talktriage.errors import PageGoneError, ProtocolError, StaleRevisionError, TransportError

logger = logging.getLogger(__name__)

USER_AGENT = f"talktriage/{__version__} (Talk-Page monitoring; read-only)"


@dataclass(frozen=True)
class RevisionSnapshot:
    page_title: str
    revision_id: int
    wikitext: str  # complete page source, never a fragment
    fetched_at: datetime
    revision_time: datetime


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


def parse_api_timestamp(raw: str) -> datetime:
    """Parse a MediaWiki API timestamp ('2021-06-05T12:03:00Z') as UTC."""
    if raw.endswith("Z"):
        raw = raw[:-1] + "+00:00"
    dt = datetime.fromisoformat(raw)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


class _MonotonicGuard:
    """Rejects revisions that move backwards for a page."""

    def __init__(self) -> None:
        self._last_seen: dict[str, int] = {}

    def check(self, page_title: str, revision_id: int) -> None:
        last = self._last_seen.get(page_title, 0)
        if revision_id < last:
            raise StaleRevisionError(
                f"{page_title}: revision {revision_id} is older than already-seen {last}"
            )
        self._last_seen[page_title] = revision_id


class MediaWikiRevisionSource:
    """Fetches the newest revision of a page from a MediaWiki Action API."""

    def __init__(self, api_base_url: str, timeout: float = 30.0, session=None):
        self.api_base_url = api_base_url
        self.timeout = timeout
        self._session = session or requests.Session()
        self._session.headers["User-Agent"] = USER_AGENT
        self._guard = _MonotonicGuard()

    def fetch_latest(self, page_title: str) -> RevisionSnapshot:
        params = {
            "action": "query",
            "format": "json",
            "formatversion": 2,
            "prop": "revisions",
            "rvprop": "ids|timestamp|content",
            "rvslots": "main",
            "titles": page_title,
        }
        try:
            response = self._session.get(
                self.api_base_url, params=params, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise TransportError(f"{page_title}: fetch failed: {exc}") from exc
        if response.status_code != 200:
            raise TransportError(f"{page_title}: HTTP {response.status_code}")
        try:
            payload = response.json()
            pages = payload["query"]["pages"]
            page = pages[0]
            if page.get("missing") or page.get("invalid"):
                raise PageGoneError(f"{page_title}: page missing or deleted upstream")
            rev = page["revisions"][0]
            revision_id = int(rev["revid"])
            revision_time = parse_api_timestamp(rev["timestamp"])
            wikitext = rev["slots"]["main"]["content"]
        except PageGoneError:
            raise
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProtocolError(f"{page_title}: malformed API response: {exc}") from exc
        self._guard.check(page_title, revision_id)
        return RevisionSnapshot(
            page_title=page_title,
            revision_id=revision_id,
            wikitext=wikitext,
            fetched_at=_utcnow(),
            revision_time=revision_time,
        )


class FixtureRevisionSource:
    """Replays recorded snapshots from disk, advancing one revision per fetch.

    Once a page's recording is exhausted, the last revision is returned
    again (the poller then sees no change).
    """

    def __init__(self, fixture_dir: str | Path):
        self.fixture_dir = Path(fixture_dir)
        self._queues: dict[str, list[tuple[int, datetime]]] = {}
        self._cursor: dict[str, int] = {}
        self._dirs: dict[str, Path] = {}
        self._guard = _MonotonicGuard()
        self._load_layout()

    @staticmethod
    def page_title_for_dir(name: str) -> str:
        """Directory name -> canonical page title.

        Underscores become spaces; names without a namespace prefix get a
        capitalized stem under the Talk namespace ('escalation' ->
        'Talk:Escalation').
        """
        title = name.replace("_", " ")
        if ":" in title:
            return title
        return "Talk:" + title[:1].upper() + title[1:]

    def _load_layout(self) -> None:
        if not self.fixture_dir.is_dir():
            raise ProtocolError(f"fixture directory not found: {self.fixture_dir}")
        for page_dir in sorted(p for p in self.fixture_dir.iterdir() if p.is_dir()):
            meta = page_dir / "meta.tsv"
            if not meta.is_file():
                raise ProtocolError(f"{page_dir}: missing meta.tsv")
            rows: list[tuple[int, datetime]] = []
            for lineno, line in enumerate(meta.read_text(encoding="utf-8").splitlines(), 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    rev_field, ts_field = line.split("\t")
                    rows.append((int(rev_field), parse_api_timestamp(ts_field)))
                except ValueError as exc:
                    raise ProtocolError(f"{meta}:{lineno}: bad row: {exc}") from exc
            title = self.page_title_for_dir(page_dir.name)
            self._queues[title] = rows
            self._cursor[title] = 0
            self._dirs[title] = page_dir

    @property
    def page_titles(self) -> list[str]:
        return sorted(self._queues)

    def exhausted(self) -> bool:
        """True once every page has replayed all recorded revisions."""
        return all(self._cursor[t] >= len(q) for t, q in self._queues.items())

    def fetch_latest(self, page_title: str) -> RevisionSnapshot:
        if page_title not in self._queues:
            raise PageGoneError(f"{page_title}: not present in fixture recording")
        queue = self._queues[page_title]
        if not queue:
            raise PageGoneError(f"{page_title}: fixture recording is empty")
        position = self._cursor[page_title]
        if position >= len(queue):
            position = len(queue) - 1  # hold on the final revision
        else:
            self._cursor[page_title] = position + 1
        revision_id, revision_time = queue[position]
        path = self._dirs[page_title] / f"{revision_id}.wikitext"
        if not path.is_file():
            raise ProtocolError(f"{path}: snapshot file missing")
        self._guard.check(page_title, revision_id)
        return RevisionSnapshot(
            page_title=page_title,
            revision_id=revision_id,
            wikitext=path.read_text(encoding="utf-8"),
            fetched_at=_utcnow(),
            revision_time=revision_time,
        )
