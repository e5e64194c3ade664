from talktriage.forecast.baseline import (
    DEFAULT_WEIGHTS,
    FeatureVector,
    baseline_score,
    extract_features,
    stored_score,
)
from talktriage.forecast.external import external_score_request
from talktriage.forecast.history import ForecastEngine, ForecastHistory, ForecastPoint
from talktriage.forecast.lexicon import load_lexicon
from talktriage.forecast.scorer import (
    ScorerDescriptor,
    builtin_descriptor,
    external_descriptor,
    score_prefix,
)

__all__ = [
    "DEFAULT_WEIGHTS",
    "FeatureVector",
    "ForecastEngine",
    "ForecastHistory",
    "ForecastPoint",
    "ScorerDescriptor",
    "baseline_score",
    "builtin_descriptor",
    "external_descriptor",
    "external_score_request",
    "extract_features",
    "load_lexicon",
    "score_prefix",
    "stored_score",
]
