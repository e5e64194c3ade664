"""Pluggable scorer contract.

A scorer maps a conversation prefix {c_1..c_k} to the probability that
the next comment turns antisocial. Two kinds exist: the built-in
deterministic baseline, and an adapter delegating to an external model
service over HTTP. All points of one history carry one scorer id.
"""

from dataclasses import dataclass

from talktriage.errors import ConfigurationError, UsageError
from talktriage.forecast.baseline import DEFAULT_WEIGHTS, baseline_score, extract_features
from talktriage.forecast.external import external_score_request
from talktriage.forecast.lexicon import load_lexicon
from talktriage.parsing.records import ConversationRecord

KIND_BUILTIN = "builtin-baseline"
KIND_EXTERNAL = "external"


@dataclass(frozen=True)
class ScorerDescriptor:
    scorer_id: str
    kind: str
    weights: tuple[float, ...] = DEFAULT_WEIGHTS  # builtin only
    lexicon_path: str | None = None  # builtin only
    endpoint: str | None = None  # external only
    timeout: float = 10.0  # external only

    def __post_init__(self):
        if self.kind not in (KIND_BUILTIN, KIND_EXTERNAL):
            raise ConfigurationError(f"unknown scorer kind: {self.kind!r}")
        if self.kind == KIND_EXTERNAL and not self.endpoint:
            raise ConfigurationError("external scorer needs an endpoint")
        if self.kind == KIND_BUILTIN and len(self.weights) != 5:
            raise ConfigurationError("builtin scorer needs 5 weights (bias + 4)")


def builtin_descriptor(
    weights: tuple[float, ...] = DEFAULT_WEIGHTS,
    lexicon_path: str | None = None,
) -> ScorerDescriptor:
    """Built-in baseline; the id embeds the lexicon digest for traceability."""
    _, digest = load_lexicon(lexicon_path)
    return ScorerDescriptor(
        scorer_id=f"baseline-v1-lex{digest}",
        kind=KIND_BUILTIN,
        weights=weights,
        lexicon_path=lexicon_path,
    )


def external_descriptor(
    endpoint: str, timeout: float = 10.0, scorer_id: str | None = None
) -> ScorerDescriptor:
    return ScorerDescriptor(
        scorer_id=scorer_id or "external",
        kind=KIND_EXTERNAL,
        endpoint=endpoint,
        timeout=timeout,
    )


def score_prefix(
    scorer: ScorerDescriptor, conversation: ConversationRecord, k: int
) -> float:
    """Risk score for the prefix {c_1..c_k}; raw, not yet rounded for storage."""
    if not 1 <= k <= len(conversation.comments):
        raise UsageError(
            f"prefix length {k} out of range 1..{len(conversation.comments)}"
        )
    if scorer.kind == KIND_BUILTIN:
        features = extract_features(
            conversation.comments[k - 1].text, scorer.lexicon_path
        )
        return baseline_score(features, scorer.weights)
    return external_score_request(
        scorer.endpoint, list(conversation.comments[:k]), scorer.timeout
    )
