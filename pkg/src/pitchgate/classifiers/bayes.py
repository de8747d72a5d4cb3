"""Gaussian Naive Bayes with a variance floor.

Per-class feature sums are accumulated over sorted values so fitted
parameters are bit-identical under any permutation of the training rows.
"""

from __future__ import annotations

import numpy as np

from .base import ModelConfig, TrainingSet, validate_row


def _ordered_sum(values: np.ndarray) -> float:
    return float(np.sum(np.sort(values)))


class GaussianNBModel:
    algorithm = "gaussian_nb"

    def __init__(
        self,
        config: ModelConfig,
        columns: list[str],
        log_priors: np.ndarray,
        means: np.ndarray,
        variances: np.ndarray,
    ):
        self.config = config
        self.columns = columns
        self.log_priors = log_priors  # (2,)
        self.means = means  # (2, d)
        self.variances = variances  # (2, d), floor already added

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "GaussianNBModel":
        data.require_both_classes()
        hp = config.hyperparameters()
        floor = hp["variance_floor"]
        X = data.X.values
        y = data.y.labels
        n, d = X.shape
        means = np.zeros((2, d))
        variances = np.zeros((2, d))
        log_priors = np.zeros(2)
        for c in (0, 1):
            rows = X[y == c]
            log_priors[c] = np.log(rows.shape[0] / n)
            for j in range(d):
                mean = _ordered_sum(rows[:, j]) / rows.shape[0]
                dev = rows[:, j] - mean
                var = _ordered_sum(dev * dev) / rows.shape[0]
                means[c, j] = mean
                variances[c, j] = var + floor
        return cls(config, list(data.X.columns), log_priors, means, variances)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        log_post = np.zeros((X.shape[0], 2))
        for c in (0, 1):
            var = self.variances[c]
            ll = -0.5 * (
                np.log(2.0 * np.pi * var) + (X - self.means[c]) ** 2 / var
            ).sum(axis=1)
            log_post[:, c] = self.log_priors[c] + ll
        # Softmax over the two classes, stabilized.
        shift = log_post.max(axis=1, keepdims=True)
        expd = np.exp(log_post - shift)
        return expd[:, 1] / expd.sum(axis=1)

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return float(self.predict_proba_matrix(row[None, :])[0])

    def params_to_dict(self) -> dict:
        return {
            "log_priors": self.log_priors.tolist(),
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
        }

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "GaussianNBModel":
        return cls(
            config,
            columns,
            np.array(params["log_priors"], dtype=np.float64),
            np.array(params["means"], dtype=np.float64),
            np.array(params["variances"], dtype=np.float64),
        )
