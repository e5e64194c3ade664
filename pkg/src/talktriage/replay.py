"""Offline evaluation harness.

Replays labeled conversations through the online forecasting path and
scores forecasters on whether they flag derailment *before the fact*: a
conversation counts as flagged only if some forecast point strictly
before its first antisocial comment reaches the threshold (for clean
conversations, any point qualifies). Lead time is measured in comments:
first antisocial ordinal minus the first alerting prefix length.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from talktriage.errors import CorpusValidationError
from talktriage.forecast.history import ForecastEngine, ForecastHistory
from talktriage.forecast.scorer import ScorerDescriptor
from talktriage.parsing import dumpio
from talktriage.parsing.records import ConversationRecord, NewCommentEvent

_EPOCH = datetime(2000, 1, 1, tzinfo=timezone.utc)


@dataclass(frozen=True)
class LabeledConversation:
    conversation: ConversationRecord
    labels: tuple[bool, ...]  # per-comment is_antisocial

    @property
    def derails(self) -> bool:
        return any(self.labels)

    @property
    def first_antisocial_ordinal(self) -> int | None:
        for index, label in enumerate(self.labels):
            if label:
                return index + 1
        return None


@dataclass(frozen=True)
class EvalReport:
    scorer_id: str
    threshold: float
    true_positives: int
    false_positives: int
    true_negatives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float
    mean_lead_time: float  # comments; 0.0 when there are no true positives

    def to_dict(self) -> dict:
        return {
            "scorer_id": self.scorer_id,
            "threshold": self.threshold,
            "true_positives": self.true_positives,
            "false_positives": self.false_positives,
            "true_negatives": self.true_negatives,
            "false_negatives": self.false_negatives,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "mean_lead_time": self.mean_lead_time,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_tsv(self) -> str:
        items = self.to_dict()
        keys = sorted(items)
        header = "\t".join(keys)
        row = "\t".join(str(items[k]) for k in keys)
        return f"{header}\n{row}"


# -- corpus ---------------------------------------------------------------


def load_corpus(path: str | Path) -> list[LabeledConversation]:
    """Parse and validate a labeled corpus in the dump format."""
    labeled: list[LabeledConversation] = []
    offenders: list[str] = []
    for raw in dumpio.iter_dump_dicts(path):
        conversation = dumpio.conversation_from_dict(raw)
        labels = tuple(
            bool(c.get("is_antisocial", False)) for c in raw["comments"]
        )
        missing = any("is_antisocial" not in c for c in raw["comments"])
        declared = raw.get("derails")
        ordinals = [c.ordinal for c in conversation.comments]
        structure_ok = (
            not missing
            and len(labels) == len(conversation.comments)
            and len(labels) > 0
            and ordinals == list(range(1, len(ordinals) + 1))
            and (declared is None or bool(declared) == any(labels))
        )
        if not structure_ok:
            offenders.append(conversation.conversation_id)
            continue
        labeled.append(LabeledConversation(conversation, labels))
    if offenders:
        raise CorpusValidationError(
            f"{len(offenders)} conversation(s) failed validation", offenders
        )
    if not labeled:
        raise CorpusValidationError("corpus is empty")
    return labeled


# -- scorers the harness understands ----------------------------------------


class DescriptorEvalScorer:
    """Runs a real scorer through the online forecasting path."""

    def __init__(self, descriptor: ScorerDescriptor):
        self.scorer_id = descriptor.scorer_id
        self._engine = ForecastEngine(descriptor, clock=lambda: _EPOCH)

    def prefix_scores(self, item: LabeledConversation) -> list[float]:
        conversation = item.conversation
        history = ForecastHistory(conversation.conversation_id)
        for comment in conversation.comments:
            event = NewCommentEvent(
                conversation.conversation_id, comment, page_revision_id=0
            )
            history = self._engine.on_new_comment(history, conversation, event)
        return [p.score for p in history.points]


class OracleEvalScorer:
    """Label-reading reference: 1.0 exactly on the prefix preceding the
    first antisocial comment, 0.0 everywhere else."""

    scorer_id = "oracle"

    def prefix_scores(self, item: LabeledConversation) -> list[float]:
        target = item.first_antisocial_ordinal
        n = len(item.conversation.comments)
        return [
            1.0 if target is not None and k == target - 1 else 0.0
            for k in range(1, n + 1)
        ]


class ConstantEvalScorer:
    def __init__(self, value: float):
        self.value = value
        self.scorer_id = f"constant-{value}"

    def prefix_scores(self, item: LabeledConversation) -> list[float]:
        return [self.value] * len(item.conversation.comments)


# -- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class _Outcome:
    conversation_id: str
    derails: bool
    flagged: bool
    lead_time: int | None  # comments of warning, true positives only


def _evaluate_one(item: LabeledConversation, scorer, threshold: float) -> _Outcome:
    scores = scorer.prefix_scores(item)
    first_bad = item.first_antisocial_ordinal
    qualifying = len(scores) if first_bad is None else first_bad - 1
    first_alert = None
    for k in range(1, qualifying + 1):
        if scores[k - 1] >= threshold:
            first_alert = k
            break
    flagged = first_alert is not None
    lead = None
    if flagged and first_bad is not None:
        lead = first_bad - first_alert
    return _Outcome(
        conversation_id=item.conversation.conversation_id,
        derails=item.derails,
        flagged=flagged,
        lead_time=lead,
    )


def replay_corpus(
    corpus: list[LabeledConversation],
    scorer,
    threshold: float,
    parallel: bool = False,
) -> EvalReport:
    """Confusion counts and metrics over a labeled corpus."""
    if not corpus:
        raise CorpusValidationError("corpus is empty")
    if parallel:
        with ThreadPoolExecutor() as pool:
            outcomes = list(
                pool.map(lambda item: _evaluate_one(item, scorer, threshold), corpus)
            )
    else:
        outcomes = [_evaluate_one(item, scorer, threshold) for item in corpus]
    outcomes.sort(key=lambda o: o.conversation_id)

    tp = sum(1 for o in outcomes if o.derails and o.flagged)
    fp = sum(1 for o in outcomes if not o.derails and o.flagged)
    tn = sum(1 for o in outcomes if not o.derails and not o.flagged)
    fn = sum(1 for o in outcomes if o.derails and not o.flagged)

    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    leads = [o.lead_time for o in outcomes if o.derails and o.flagged]
    mean_lead = sum(leads) / len(leads) if leads else 0.0

    return EvalReport(
        scorer_id=scorer.scorer_id,
        threshold=threshold,
        true_positives=tp,
        false_positives=fp,
        true_negatives=tn,
        false_negatives=fn,
        precision=precision,
        recall=recall,
        f1=f1,
        mean_lead_time=mean_lead,
    )
