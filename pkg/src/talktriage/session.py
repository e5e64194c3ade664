"""Hermetic end-to-end runs over recorded fixtures.

Drives the full pipeline (poll, parse, score, rank) from a fixture
transport directory and writes the final ranking in the exact shape the
/api/ranking endpoint serves. Ranking age is judged against the newest
activity found in the fixtures, since recorded timestamps are frozen in
time.
"""

import json
from datetime import datetime, timedelta, timezone
from pathlib import Path

from talktriage.api import ranking_response, ServiceContext
from talktriage.forecast.history import ForecastEngine
from talktriage.forecast.scorer import ScorerDescriptor, builtin_descriptor, external_descriptor
from talktriage.ingest.config import AppConfig, PageConfig
from talktriage.ingest.poller import Poller
from talktriage.ingest.revisions import FixtureRevisionSource
from talktriage.pipeline import Pipeline
from talktriage.store import Store


def scorer_from_config(config: AppConfig) -> ScorerDescriptor:
    if config.scorer.kind == "external":
        return external_descriptor(config.scorer.endpoint, config.scorer.timeout)
    return builtin_descriptor()


def run_fixture_session(
    fixture_dir: str | Path,
    config: AppConfig,
    out_path: str | Path,
    store_dir: str | Path | None = None,
) -> Store:
    """Replay every recorded revision, persist the store, dump the ranking."""
    source = FixtureRevisionSource(fixture_dir)
    pages = tuple(PageConfig(title) for title in source.page_titles)
    poller = Poller(source, pages)
    store = Store(store_dir)
    engine = ForecastEngine(scorer_from_config(config))
    pipeline = Pipeline(poller, engine, store)

    # drive virtual time one poll interval per round until the recording ends
    now = 0.0
    max_interval = max((p.poll_interval for p in pages), default=60.0)
    while not source.exhausted():
        pipeline.process_tick(now)
        now += max_interval
    pipeline.process_tick(now)  # final round observes the last revisions

    write_ranking_dump(store, config, out_path)
    return store


def ranking_now(store: Store) -> datetime:
    """Newest activity across the store; synthetic fixtures stay 'recent'."""
    view = store.snapshot()
    stamps = [
        c.last_activity for c in view.conversations.values() if c.last_activity
    ]
    return max(stamps) if stamps else datetime.now(timezone.utc)


def write_ranking_dump(store: Store, config: AppConfig, out_path: str | Path) -> dict:
    ctx = ServiceContext(
        store=store,
        tokens={},
        scorer_id=scorer_from_config(config).scorer_id,
        staleness=timedelta(hours=config.staleness_hours),
        risk_thresholds=(config.risk_elevated, config.risk_high),
        trend_thresholds=(config.trend_small, config.trend_large),
    )
    payload = ranking_response(
        ctx, store.snapshot(), ranking_now(store), limit=1000, offset=0
    )
    Path(out_path).write_text(
        json.dumps(payload, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    return payload
