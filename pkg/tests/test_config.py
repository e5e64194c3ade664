import pytest

from talktriage.errors import ConfigurationError
from talktriage.ingest.config import (
    AppConfig,
    PageConfig,
    ScorerConfig,
    default_config,
    is_talk_page_title,
    load_config,
)

SAMPLE = """
[api]
base_url = http://wiki.test/w/api.php

[service]
bind = 0.0.0.0:9000
tokens = tok1:alice tok2:bob
staleness_hours = 48
risk_elevated = 0.3
risk_high = 0.7

[scorer]
kind = external
endpoint = http://scorer.test/score
timeout = 5

[page:Talk:Some article]
poll_interval = 120
enabled = true

[page:Talk:Another one]
poll_interval = 30
enabled = false
"""


def test_full_config_round_trip(tmp_path):
    path = tmp_path / "talktriage.ini"
    path.write_text(SAMPLE)
    config = load_config(path)
    assert config.api_base_url == "http://wiki.test/w/api.php"
    assert (config.bind_host, config.bind_port) == ("0.0.0.0", 9000)
    assert config.tokens == {"tok1": "alice", "tok2": "bob"}
    assert config.staleness_hours == 48.0
    assert (config.risk_elevated, config.risk_high) == (0.3, 0.7)
    assert config.scorer.kind == "external"
    assert config.scorer.endpoint == "http://scorer.test/score"
    assert config.scorer.timeout == 5.0
    titles = {p.page_title: p for p in config.pages}
    assert titles["Talk:Some article"].poll_interval == 120.0
    assert titles["Talk:Another one"].enabled is False


def test_missing_file_is_a_configuration_error(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config(tmp_path / "absent.ini")


def test_empty_config_falls_back_to_defaults(tmp_path):
    path = tmp_path / "empty.ini"
    path.write_text("")
    config = load_config(path)
    assert config.pages == default_config().pages
    assert config.staleness_hours == 72.0


def test_page_title_must_be_in_a_talk_namespace():
    assert is_talk_page_title("Talk:Foo")
    assert is_talk_page_title("User talk:Foo")
    assert not is_talk_page_title("Foo")
    assert not is_talk_page_title("User:Foo")
    with pytest.raises(ConfigurationError):
        PageConfig(page_title="Barack Obama")


def test_poll_interval_floor():
    with pytest.raises(ConfigurationError):
        PageConfig(page_title="Talk:Foo", poll_interval=1.0)
    PageConfig(page_title="Talk:Foo", poll_interval=5.0)  # boundary is allowed


def test_inverted_risk_thresholds_rejected():
    with pytest.raises(ConfigurationError):
        AppConfig(pages=(), risk_elevated=0.7, risk_high=0.4)


def test_external_scorer_requires_endpoint():
    with pytest.raises(ConfigurationError):
        ScorerConfig(kind="external", endpoint=None)
    with pytest.raises(ConfigurationError):
        ScorerConfig(kind="mystery")


def test_malformed_tokens_rejected(tmp_path):
    path = tmp_path / "bad.ini"
    path.write_text("[service]\ntokens = justatoken\n")
    with pytest.raises(ConfigurationError):
        load_config(path)
