"""Confusion-matrix metrics and the rank-statistic ROC AUC.

Zero-denominator metrics report 0 and carry an `undefined` flag instead of
NaN, so reports stay totalizable; renderers must surface the flag. ROC AUC
uses exact pair semantics (ties credit one half), equivalent to the rank-sum
statistic, rather than curve integration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class MetricError(Exception):
    pass


class LengthMismatch(MetricError):
    pass


class EmptyMatrix(MetricError):
    pass


class SingleClass(MetricError):
    pass


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self) -> None:
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be nonnegative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn

    def to_json_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "fn": self.fn, "tn": self.tn}


def confusion(predicted: list[int], actual: list[int]) -> ConfusionMatrix:
    """Count the four cells with Deal (1) as the positive class."""
    if len(predicted) != len(actual):
        raise LengthMismatch(
            f"predicted has {len(predicted)} entries, actual has {len(actual)}"
        )
    if not predicted:
        raise EmptyMatrix("cannot build a confusion matrix from zero pairs")
    tp = fp = fn = tn = 0
    for p, a in zip(predicted, actual):
        if p == 1 and a == 1:
            tp += 1
        elif p == 1 and a == 0:
            fp += 1
        elif p == 0 and a == 1:
            fn += 1
        else:
            tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


@dataclass
class MetricReport:
    """The five confusion metrics, the balanced composite, and optional AUC."""

    accuracy: float
    precision: float
    recall: float
    f1: float
    specificity: float
    balanced: float
    roc_auc: float | None
    undefined: frozenset[str]
    cm: ConfusionMatrix

    def to_json_dict(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "specificity": self.specificity,
            "balanced": self.balanced,
            "roc_auc": self.roc_auc,
            "undefined": sorted(self.undefined),
            "confusion": self.cm.to_json_dict(),
        }


def _ratio(num: int, den: int, name: str, undefined: set[str]) -> float:
    if den == 0:
        undefined.add(name)
        return 0.0
    return num / den


def binary_metrics(
    cm: ConfusionMatrix,
    scores: list[float] | None = None,
    actual: list[int] | None = None,
) -> MetricReport:
    """All metrics from one confusion matrix; AUC when scores are supplied."""
    if cm.total < 1:
        raise EmptyMatrix("metrics need at least one counted pair")
    undefined: set[str] = set()
    accuracy = (cm.tp + cm.tn) / cm.total
    precision = _ratio(cm.tp, cm.tp + cm.fp, "precision", undefined)
    recall = _ratio(cm.tp, cm.tp + cm.fn, "recall", undefined)
    if precision + recall == 0:
        undefined.add("f1")
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    specificity = _ratio(cm.tn, cm.tn + cm.fp, "specificity", undefined)
    balanced = (f1 + accuracy + specificity) / 3.0
    auc = None
    if scores is not None:
        if actual is None:
            raise MetricError("actual labels are required alongside scores")
        auc = roc_auc(scores, actual)
    return MetricReport(
        accuracy=accuracy,
        precision=precision,
        recall=recall,
        f1=f1,
        specificity=specificity,
        balanced=balanced,
        roc_auc=auc,
        undefined=frozenset(undefined),
        cm=cm,
    )


def _average_ranks(values: np.ndarray) -> np.ndarray:
    """Ranks 1..n with tied values receiving the mean of their positions."""
    order = np.argsort(values, kind="stable")
    ranks = np.empty(len(values), dtype=np.float64)
    i = 0
    while i < len(values):
        j = i
        while j + 1 < len(values) and values[order[j + 1]] == values[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def roc_auc(scores: list[float], actual: list[int]) -> float:
    """Probability a random Deal outscores a random NoDeal; ties count half.

    Computed with the rank-sum statistic, which equals exhaustive pair
    counting with half credit for ties.
    """
    if len(scores) != len(actual):
        raise LengthMismatch("scores and labels are misaligned")
    s = np.asarray(scores, dtype=np.float64)
    a = np.asarray(actual, dtype=np.int64)
    n_pos = int(np.sum(a == 1))
    n_neg = int(np.sum(a == 0))
    if n_pos == 0 or n_neg == 0:
        raise SingleClass("ROC AUC requires both classes present")
    ranks = _average_ranks(s)
    pos_rank_sum = float(np.sum(ranks[a == 1]))
    return (pos_rank_sum - n_pos * (n_pos + 1) / 2.0) / (n_pos * n_neg)


def mean_absolute_error(x: list[float], y: list[float]) -> float:
    if len(x) != len(y):
        raise LengthMismatch("vectors are misaligned")
    if not len(x):
        raise LengthMismatch("vectors must be non-empty")
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    return float(np.mean(np.abs(xv - yv)))
