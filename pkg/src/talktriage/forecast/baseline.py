"""Deterministic built-in risk scorer.

A logistic model over four surface features of the newest comment. It is
a stand-in for a real forecasting model: deterministic, monotone in every
feature, and hermetic, which is what the test suite and the replay
harness need. It makes no claim to the accuracy of trained forecasters.
"""

import math
import re
from dataclasses import dataclass

from talktriage.forecast.lexicon import load_lexicon

# tokens = maximal runs of alphanumerics/apostrophes
TOKEN_RE = re.compile(r"[A-Za-z0-9']+")

SECOND_PERSON = frozenset({"you", "your", "yours", "you're", "youre"})

FEATURE_CAP = 5  # lexicon hits and exclamation count saturate here

# bias, second-person, lexicon hits, exclamations, caps ratio
DEFAULT_WEIGHTS = (-2.0, 3.0, 1.5, 0.5, 2.0)

SCORE_DECIMALS = 6  # persisted precision; keeps stored histories portable


@dataclass(frozen=True)
class FeatureVector:
    f_second_person: float  # fraction of tokens addressing the other party
    f_lexicon_hits: int  # capped at FEATURE_CAP
    f_exclamations: int  # capped at FEATURE_CAP
    f_caps_ratio: float  # fraction of >=2-letter alphabetic tokens in all caps

    def __post_init__(self):
        if not 0.0 <= self.f_second_person <= 1.0:
            raise ValueError(f"f_second_person out of range: {self.f_second_person}")
        if not 0 <= self.f_lexicon_hits <= FEATURE_CAP:
            raise ValueError(f"f_lexicon_hits out of range: {self.f_lexicon_hits}")
        if not 0 <= self.f_exclamations <= FEATURE_CAP:
            raise ValueError(f"f_exclamations out of range: {self.f_exclamations}")
        if not 0.0 <= self.f_caps_ratio <= 1.0:
            raise ValueError(f"f_caps_ratio out of range: {self.f_caps_ratio}")


def tokenize(text: str) -> list[str]:
    return TOKEN_RE.findall(text)


def extract_features(text: str, lexicon_path: str | None = None) -> FeatureVector:
    """Features of a single comment body."""
    lexicon, _ = load_lexicon(lexicon_path)
    tokens = tokenize(text)
    lowered = [t.lower() for t in tokens]

    second_person = sum(1 for t in lowered if t in SECOND_PERSON)
    lexicon_hits = sum(1 for t in lowered if t in lexicon)
    exclamations = text.count("!")

    alpha = [t for t in tokens if len(t) >= 2 and t.isalpha()]
    caps = sum(1 for t in alpha if t.isupper())

    return FeatureVector(
        f_second_person=second_person / max(len(tokens), 1),
        f_lexicon_hits=min(lexicon_hits, FEATURE_CAP),
        f_exclamations=min(exclamations, FEATURE_CAP),
        f_caps_ratio=caps / max(len(alpha), 1),
    )


def logistic(x: float) -> float:
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def baseline_score(
    features: FeatureVector, weights: tuple[float, ...] = DEFAULT_WEIGHTS
) -> float:
    """Logistic combination of the features; always strictly inside (0, 1)."""
    w0, w1, w2, w3, w4 = weights
    return logistic(
        w0
        + w1 * features.f_second_person
        + w2 * features.f_lexicon_hits
        + w3 * features.f_exclamations
        + w4 * features.f_caps_ratio
    )


def stored_score(raw: float) -> float:
    """Round to the persisted precision (applied to every stored point)."""
    return round(raw, SCORE_DECIMALS)
