"""Live service entry point: poll loop plus the HTTP API."""

import argparse
import logging
import sys
import threading
import time
from datetime import timedelta

import uvicorn

from talktriage.api import ServiceContext, create_app
from talktriage.errors import ConfigurationError
from talktriage.forecast.history import ForecastEngine
from talktriage.ingest.config import PageConfig, default_config, load_config
from talktriage.ingest.poller import Poller
from talktriage.ingest.revisions import FixtureRevisionSource, MediaWikiRevisionSource
from talktriage.pipeline import Pipeline
from talktriage.session import scorer_from_config
from talktriage.store import Store

logger = logging.getLogger(__name__)


def _poll_loop(pipeline: Pipeline, stop: threading.Event, idle_sleep: float) -> None:
    while not stop.is_set():
        try:
            pipeline.process_tick()
        except Exception:
            logger.exception("tick failed")
        stop.wait(idle_sleep)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description="Run the monitoring service")
    parser.add_argument("--config", help="INI config file (docs/config.md)")
    parser.add_argument("--store-dir", default="talktriage-store")
    parser.add_argument("--fixtures", help="serve from a fixture recording instead of the live API")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    try:
        config = load_config(args.config) if args.config else default_config()
        if not config.tokens:
            raise ConfigurationError(
                "no API tokens configured; add tokens under [service]"
            )
        if args.fixtures:
            source = FixtureRevisionSource(args.fixtures)
            pages = tuple(PageConfig(title) for title in source.page_titles)
        else:
            source = MediaWikiRevisionSource(config.api_base_url)
            pages = config.pages
        scorer = scorer_from_config(config)
    except ConfigurationError as exc:
        print(f"startup failure: {exc}", file=sys.stderr)
        return 1

    store = Store(args.store_dir)
    poller = Poller(source, pages)
    pipeline = Pipeline(poller, ForecastEngine(scorer), store)

    if args.fixtures:
        # drain the recording up front instead of replaying it at the
        # real poll cadence; afterwards the loop just re-serves the end
        virtual_now = time.monotonic()
        step = max((p.poll_interval for p in pages), default=60.0)
        while not source.exhausted():
            pipeline.process_tick(virtual_now)
            virtual_now += step
        pipeline.process_tick(virtual_now)
        logger.info("fixture recording drained; serving final state")
    ctx = ServiceContext(
        store=store,
        tokens=config.tokens,
        scorer_id=scorer.scorer_id,
        staleness=timedelta(hours=config.staleness_hours),
        risk_thresholds=(config.risk_elevated, config.risk_high),
        trend_thresholds=(config.trend_small, config.trend_large),
        pages_tracked=[p.page_title for p in pages],
        poll_times_fn=poller.last_poll_times,
    )
    app = create_app(ctx)

    stop = threading.Event()
    idle = min((p.poll_interval for p in pages), default=60.0) / 4
    worker = threading.Thread(
        target=_poll_loop, args=(pipeline, stop, max(idle, 1.0)), daemon=True
    )
    worker.start()
    try:
        uvicorn.run(app, host=config.bind_host, port=config.bind_port, log_level="info")
    except (OSError, SystemExit) as exc:
        print(f"startup failure: {exc}", file=sys.stderr)
        return 1
    finally:
        stop.set()
        store.close()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
