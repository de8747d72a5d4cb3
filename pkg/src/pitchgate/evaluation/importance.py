"""Permutation feature importance: baseline objective minus the mean
objective over seeded within-column shuffles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..classifiers import TrainingSet, validate_row
from .crossval import OBJECTIVES, score_predictions


@dataclass
class ImportanceReport:
    objective: str
    baseline: float
    repeats: int
    importances: dict[str, float]  # column name -> weight

    def to_json_dict(self) -> dict:
        return {
            "objective": self.objective,
            "baseline": self.baseline,
            "repeats": self.repeats,
            "importances": dict(self.importances),
        }


def permutation_importance(
    model,
    data: TrainingSet,
    objective: str = "accuracy",
    repeats: int = 10,
    seed: int = 0,
) -> ImportanceReport:
    """Importance per column, deterministic for a fixed seed."""
    if repeats < 1:
        raise ValueError("repeats must be at least 1")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}")
    columns = data.X.columns
    validate_row(model.columns, data.X.values[0])
    if list(model.columns) != list(columns):
        raise ValueError("model and data column names disagree")
    X = data.X.values
    y = data.y.labels
    baseline = score_predictions(model.predict_proba_matrix(X), y, objective)
    rng = np.random.default_rng(seed)
    importances: dict[str, float] = {}
    for j, name in enumerate(columns):
        drops = []
        for _ in range(repeats):
            shuffled = X.copy()
            shuffled[:, j] = X[rng.permutation(X.shape[0]), j]
            drops.append(
                score_predictions(model.predict_proba_matrix(shuffled), y, objective)
            )
        importances[name] = baseline - float(np.mean(drops))
    return ImportanceReport(
        objective=objective, baseline=baseline, repeats=repeats, importances=importances
    )
