"""Soft-voting ensemble: weighted arithmetic mean of member probabilities.
Members train on the same data, never resampled."""

from __future__ import annotations

import numpy as np

from .base import EmptyEnsemble, ModelConfig, TrainingSet, WeightMismatch, validate_row


def soft_vote(members: list, weights: list[float] | None, row: np.ndarray) -> float:
    """Weighted mean of member predict_proba outputs; uniform by default."""
    if not members:
        raise EmptyEnsemble("soft vote requires at least one member")
    if weights is None:
        weights = [1.0] * len(members)
    if len(weights) != len(members):
        raise WeightMismatch("weights length must match member count")
    if any(w < 0 for w in weights):
        raise WeightMismatch("weights must be nonnegative")
    total = float(sum(weights))
    if total <= 0:
        raise WeightMismatch("weights must not all be zero")
    acc = 0.0
    for member, w in zip(members, weights):
        acc += w * member.predict_proba(row)
    return acc / total


class SoftVoteModel:
    algorithm = "soft_vote"

    def __init__(self, config: ModelConfig, columns: list[str], members: list):
        self.config = config
        self.columns = columns
        self.members = members

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "SoftVoteModel":
        from . import train  # late import, the facade owns dispatch

        members = [train(member, data) for member in config.members]
        return cls(config, list(data.X.columns), members)

    def _weights(self) -> list[float]:
        if self.config.weights is None:
            return [1.0] * len(self.members)
        return list(self.config.weights)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        weights = self._weights()
        total = float(sum(weights))
        acc = np.zeros(np.asarray(X).shape[0])
        for member, w in zip(self.members, weights):
            acc += w * member.predict_proba_matrix(X)
        return acc / total

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return soft_vote(self.members, self._weights(), row)

    def params_to_dict(self) -> dict:
        from . import model_to_dict

        return {"members": [model_to_dict(m) for m in self.members]}

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "SoftVoteModel":
        from . import model_from_dict

        return cls(config, columns, [model_from_dict(m) for m in params["members"]])
