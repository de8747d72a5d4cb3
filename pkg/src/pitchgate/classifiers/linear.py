"""L2-regularized logistic regression trained by plain gradient descent.

Columns are standardized internally with the training mean and stdev
(stdev floor 1e-12, so constant columns map to all-zeros). The objective
trace (mean cross-entropy plus the L2 term) is recorded per iteration;
with the default step size it is non-increasing on reasonably sized
feature sets.
"""

from __future__ import annotations

import numpy as np

from .base import ModelConfig, TrainingSet, validate_row

_STD_FLOOR = 1e-12


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


class LogisticRegressionModel:
    algorithm = "logistic_regression"

    def __init__(
        self,
        config: ModelConfig,
        columns: list[str],
        weights: np.ndarray,
        intercept: float,
        means: np.ndarray,
        stds: np.ndarray,
        loss_trace: list[float],
    ):
        self.config = config
        self.columns = columns
        self.weights = weights
        self.intercept = intercept
        self.means = means
        self.stds = stds
        self.loss_trace = loss_trace

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "LogisticRegressionModel":
        data.require_both_classes()
        hp = config.hyperparameters()
        lr, iterations, l2 = hp["learning_rate"], hp["iterations"], hp["l2"]
        X = data.X.values
        y = data.y.labels.astype(np.float64)
        n, d = X.shape
        means = X.mean(axis=0)
        stds = np.maximum(X.std(axis=0), _STD_FLOOR)
        Z = (X - means) / stds

        w = np.zeros(d)
        b = 0.0
        trace: list[float] = []
        for _ in range(iterations):
            p = _sigmoid(Z @ w + b)
            trace.append(cls._objective(p, y, w, l2))
            err = p - y
            grad_w = Z.T @ err / n + l2 * w
            grad_b = float(np.mean(err))
            w = w - lr * grad_w
            b = b - lr * grad_b
        p = _sigmoid(Z @ w + b)
        trace.append(cls._objective(p, y, w, l2))
        return cls(config, list(data.X.columns), w, b, means, stds, trace)

    @staticmethod
    def _objective(p: np.ndarray, y: np.ndarray, w: np.ndarray, l2: float) -> float:
        eps = 1e-12
        ce = -np.mean(y * np.log(p + eps) + (1.0 - y) * np.log(1.0 - p + eps))
        return float(ce + 0.5 * l2 * np.dot(w, w))

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        Z = (np.asarray(X, dtype=np.float64) - self.means) / self.stds
        return _sigmoid(Z @ self.weights + self.intercept)

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return float(self.predict_proba_matrix(row[None, :])[0])

    def params_to_dict(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "intercept": self.intercept,
            "means": self.means.tolist(),
            "stds": self.stds.tolist(),
        }

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "LogisticRegressionModel":
        return cls(
            config,
            columns,
            np.array(params["weights"], dtype=np.float64),
            float(params["intercept"]),
            np.array(params["means"], dtype=np.float64),
            np.array(params["stds"], dtype=np.float64),
            loss_trace=[],
        )
