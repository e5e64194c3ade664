"""Deployment configuration.

INI file read with :mod:`configparser`. Full key reference lives in
docs/config.md; the short version:

    [api]
    base_url = https://en.wikipedia.org/w/api.php

    [service]
    bind = 127.0.0.1:8571
    tokens = s3cret:alice other:bob     ; <token>:<moderator_id> pairs
    staleness_hours = 72
    risk_elevated = 0.4
    risk_high = 0.65
    trend_small = 0.05
    trend_large = 0.15

    [scorer]
    kind = builtin-baseline             ; or: external
    ; endpoint = http://scorer:9000/score
    ; timeout = 10

    [page:Talk:Barack Obama]
    poll_interval = 60
    enabled = true
"""

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from talktriage.errors import ConfigurationError

MIN_POLL_INTERVAL = 5.0
DEFAULT_POLL_INTERVAL = 60.0

# Default watch list: Talk pages of contentious articles.
DEFAULT_TRACKED_PAGES = (
    "Talk:Barack Obama",
    "Talk:Bernie Sanders",
    "Talk:Coronavirus disease 2019",
    "Talk:COVID-19 pandemic",
    "Talk:Donald Trump",
    "Talk:Joe Biden",
    "Talk:Kim Jong-un",
    "Talk:Global warming",
)

_TALK_NAMESPACES = ("talk:",)  # prefix or "<subject> talk:" form


def is_talk_page_title(title: str) -> bool:
    """True when the title carries a namespace prefix resolving to a Talk namespace."""
    if ":" not in title:
        return False
    namespace = title.split(":", 1)[0].strip().lower()
    return namespace == "talk" or namespace.endswith(" talk")


@dataclass(frozen=True)
class PageConfig:
    page_title: str
    poll_interval: float = DEFAULT_POLL_INTERVAL  # seconds
    enabled: bool = True

    def __post_init__(self):
        if not self.page_title or not is_talk_page_title(self.page_title):
            raise ConfigurationError(
                f"page title must be in a Talk namespace: {self.page_title!r}"
            )
        if self.poll_interval < MIN_POLL_INTERVAL:
            raise ConfigurationError(
                f"{self.page_title}: poll_interval must be >= {MIN_POLL_INTERVAL}s"
            )


@dataclass(frozen=True)
class ScorerConfig:
    kind: str = "builtin-baseline"  # builtin-baseline | external
    endpoint: str | None = None
    timeout: float = 10.0

    def __post_init__(self):
        if self.kind not in ("builtin-baseline", "external"):
            raise ConfigurationError(f"unknown scorer kind: {self.kind!r}")
        if self.kind == "external" and not self.endpoint:
            raise ConfigurationError("external scorer requires an endpoint URL")


@dataclass(frozen=True)
class AppConfig:
    pages: tuple[PageConfig, ...]
    api_base_url: str = "https://en.wikipedia.org/w/api.php"
    bind_host: str = "127.0.0.1"
    bind_port: int = 8571
    tokens: dict = field(default_factory=dict)  # bearer token -> moderator_id
    staleness_hours: float = 72.0
    risk_elevated: float = 0.4
    risk_high: float = 0.65
    trend_small: float = 0.05
    trend_large: float = 0.15
    scorer: ScorerConfig = field(default_factory=ScorerConfig)

    def __post_init__(self):
        if not (0.0 < self.risk_elevated < self.risk_high < 1.0):
            raise ConfigurationError(
                f"risk thresholds must satisfy 0 < elevated < high < 1, "
                f"got ({self.risk_elevated}, {self.risk_high})"
            )
        if not (0.0 < self.trend_small < self.trend_large):
            raise ConfigurationError(
                f"trend thresholds must satisfy 0 < small < large, "
                f"got ({self.trend_small}, {self.trend_large})"
            )


def default_config() -> AppConfig:
    return AppConfig(pages=tuple(PageConfig(title) for title in DEFAULT_TRACKED_PAGES))


def _parse_tokens(raw: str) -> dict:
    tokens = {}
    for pair in raw.split():
        if ":" not in pair:
            raise ConfigurationError(f"token entry must be <token>:<moderator>: {pair!r}")
        token, moderator = pair.split(":", 1)
        tokens[token] = moderator
    return tokens


def load_config(path: str | Path) -> AppConfig:
    """Read an INI config file; missing keys fall back to defaults."""
    parser = configparser.ConfigParser()
    read = parser.read(str(path), encoding="utf-8")
    if not read:
        raise ConfigurationError(f"config file not found: {path}")

    kwargs: dict = {}
    if parser.has_option("api", "base_url"):
        kwargs["api_base_url"] = parser.get("api", "base_url")
    if parser.has_section("service"):
        service = parser["service"]
        if "bind" in service:
            host, _, port = service["bind"].rpartition(":")
            try:
                kwargs["bind_host"], kwargs["bind_port"] = host, int(port)
            except ValueError as exc:
                raise ConfigurationError(f"bad bind address: {service['bind']!r}") from exc
        if "tokens" in service:
            kwargs["tokens"] = _parse_tokens(service["tokens"])
        for key in ("staleness_hours", "risk_elevated", "risk_high", "trend_small", "trend_large"):
            if key in service:
                try:
                    kwargs[key] = float(service[key])
                except ValueError as exc:
                    raise ConfigurationError(f"{key} must be a number") from exc
    if parser.has_section("scorer"):
        scorer = parser["scorer"]
        kwargs["scorer"] = ScorerConfig(
            kind=scorer.get("kind", "builtin-baseline"),
            endpoint=scorer.get("endpoint") or None,
            timeout=float(scorer.get("timeout", "10")),
        )

    pages = []
    for section in parser.sections():
        if not section.startswith("page:"):
            continue
        title = section[len("page:") :].strip()
        body = parser[section]
        try:
            interval = float(body.get("poll_interval", str(DEFAULT_POLL_INTERVAL)))
        except ValueError as exc:
            raise ConfigurationError(f"{section}: poll_interval must be a number") from exc
        pages.append(
            PageConfig(
                page_title=title,
                poll_interval=interval,
                enabled=body.getboolean("enabled", fallback=True),
            )
        )
    if not pages:
        pages = [PageConfig(title) for title in DEFAULT_TRACKED_PAGES]
    return AppConfig(pages=tuple(pages), **kwargs)
