"""Stratified cross-validation and hyperparameter grid search.

Training folds are undersampled with fold-specific seeds derived from the
plan seed; held-out folds are never resampled. Per-config results reduce in
space order so tie-breaking stays deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..classifiers import ModelConfig, TrainingSet, decide, train
from ..features import FeatureMatrix, LabelVector, undersample
from ..util import derive_seed
from .metrics import MetricError, binary_metrics, confusion

OBJECTIVES = ("accuracy", "precision", "recall", "f1", "specificity", "balanced",
              "roc_auc")


class TooFewPerClass(MetricError):
    pass


class AllConfigsFailed(MetricError):
    pass


@dataclass
class CvPlan:
    k: int
    fold_of: np.ndarray  # row index -> fold id
    seed: int

    def fold_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of == fold)

    def complement_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of != fold)


def stratified_kfold(labels: LabelVector, k: int, seed: int) -> CvPlan:
    """Partition rows into k folds with per-class counts within one of ideal.

    Each class is shuffled and dealt to folds cyclically; dealing continues
    across classes from the last fold used, so k may run all the way up to
    the row count (leave-one-out) and every fold stays non-empty.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    y = labels.labels
    if k > len(y):
        raise TooFewPerClass(f"cannot cut {len(y)} rows into {k} non-empty folds")
    rng = np.random.default_rng(seed)
    fold_of = np.full(len(y), -1, dtype=np.int64)
    offset = 0
    for c in (0, 1):
        members = np.flatnonzero(y == c)
        shuffled = rng.permutation(members)
        for pos, row in enumerate(shuffled):
            fold_of[row] = (offset + pos) % k
        offset = (offset + len(members)) % k
    return CvPlan(k=k, fold_of=fold_of, seed=seed)


def score_predictions(
    probas: np.ndarray, actual: np.ndarray, objective: str
) -> float:
    """One objective value from probabilities and true labels."""
    predicted = [decide(float(p)) for p in probas]
    cm = confusion(predicted, list(actual))
    report = binary_metrics(cm, scores=list(probas), actual=list(actual))
    value = getattr(report, objective)
    if value is None:
        raise MetricError(f"objective {objective} undefined on this fold")
    return float(value)


@dataclass
class ConfigResult:
    config: ModelConfig
    fold_scores: list[float]
    mean_score: float | None
    error: str | None = None


@dataclass
class GridSearchResult:
    best: ModelConfig
    best_index: int
    results: list[ConfigResult]


def grid_search(
    space: list[ModelConfig],
    data: TrainingSet,
    plan: CvPlan,
    objective: str,
) -> GridSearchResult:
    """CV-mean objective per config; argmax with first-in-space tie-breaking.

    Per-config training errors are recorded, not fatal, unless every config
    fails.
    """
    if not space:
        raise ValueError("grid search space must be non-empty")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    results: list[ConfigResult] = []
    for config in space:
        fold_scores: list[float] = []
        error: str | None = None
        try:
            for fold in range(plan.k):
                train_idx = plan.complement_indices(fold)
                val_idx = plan.fold_indices(fold)
                X_tr = data.X.take(train_idx)
                y_tr = data.y.take(train_idx)
                X_tr, y_tr = undersample(
                    X_tr, y_tr, derive_seed(plan.seed, "undersample", fold)
                )
                model = train(config, TrainingSet(X=X_tr, y=y_tr))
                probas = model.predict_proba_matrix(data.X.take(val_idx).values)
                fold_scores.append(
                    score_predictions(probas, data.y.take(val_idx).labels, objective)
                )
            results.append(
                ConfigResult(
                    config=config,
                    fold_scores=fold_scores,
                    mean_score=float(np.mean(fold_scores)),
                )
            )
        except Exception as exc:  # recorded per config, surfaced if all fail
            results.append(
                ConfigResult(config=config, fold_scores=fold_scores,
                             mean_score=None, error=f"{type(exc).__name__}: {exc}")
            )
    scored = [(i, r.mean_score) for i, r in enumerate(results) if r.mean_score is not None]
    if not scored:
        raise AllConfigsFailed(
            "; ".join(r.error or "unknown" for r in results)
        )
    best_index = max(scored, key=lambda item: (item[1], -item[0]))[0]
    return GridSearchResult(
        best=results[best_index].config, best_index=best_index, results=results
    )
