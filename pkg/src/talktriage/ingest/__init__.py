from talktriage.ingest.config import DEFAULT_TRACKED_PAGES, AppConfig, PageConfig, load_config
from talktriage.ingest.diffing import PageDelta, compute_delta, reconstruct
from talktriage.ingest.poller import Poller
from talktriage.ingest.revisions import (
    FixtureRevisionSource,
    MediaWikiRevisionSource,
    RevisionSnapshot,
)

__all__ = [
    "AppConfig",
    "DEFAULT_TRACKED_PAGES",
    "FixtureRevisionSource",
    "MediaWikiRevisionSource",
    "PageConfig",
    "PageDelta",
    "Poller",
    "RevisionSnapshot",
    "compute_delta",
    "load_config",
    "reconstruct",
]
