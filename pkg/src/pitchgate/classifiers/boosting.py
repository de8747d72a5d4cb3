"""Gradient boosting for binary outcomes: stage-wise regression trees fit to
logistic-loss gradients, per-leaf Newton updates, shrinkage by the learning
rate.

Each stage is accepted only if the recorded logistic loss does not increase;
when a full step overshoots, the stage's leaf values are halved (up to a
bounded number of times) before being committed, keeping the per-stage loss
trace non-increasing by construction.
"""

from __future__ import annotations

import numpy as np

from .base import ModelConfig, TrainingSet, validate_row
from .tree import TreeArrays, build_tree

_NEWTON_EPS = 1e-12
_MAX_HALVINGS = 40


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _log_loss(y: np.ndarray, p: np.ndarray) -> float:
    eps = 1e-12
    p = np.clip(p, eps, 1.0 - eps)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log(1.0 - p)))


class GradientBoostingModel:
    algorithm = "gradient_boosting"

    def __init__(
        self,
        config: ModelConfig,
        columns: list[str],
        init_score: float,
        learning_rate: float,
        trees: list[TreeArrays],
        loss_trace: list[float],
    ):
        self.config = config
        self.columns = columns
        self.init_score = init_score
        self.learning_rate = learning_rate
        self.trees = trees
        self.loss_trace = loss_trace

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "GradientBoostingModel":
        data.require_both_classes()
        hp = config.hyperparameters()
        stages, lr, depth = hp["stages"], hp["learning_rate"], hp["max_depth"]
        X = np.ascontiguousarray(data.X.values, dtype=np.float64)
        y = data.y.labels.astype(np.float64)
        prior = float(np.clip(np.mean(y), 1e-12, 1.0 - 1e-12))
        init_score = float(np.log(prior / (1.0 - prior)))

        scores = np.full(X.shape[0], init_score)
        trace = [_log_loss(y, _sigmoid(scores))]
        trees: list[TreeArrays] = []
        for _ in range(stages):
            p = _sigmoid(scores)
            residual = y - p
            tree = build_tree(X, residual, criterion="sse", max_depth=depth,
                              min_samples_leaf=1)
            leaf_of = tree.apply(X)
            weight = p * (1.0 - p)
            # Newton step per leaf: sum of residuals over sum of hessians,
            # shrunk by the learning rate.
            for leaf in np.unique(leaf_of):
                members = leaf_of == leaf
                denom = max(float(np.sum(weight[members])), _NEWTON_EPS)
                tree.value[leaf] = lr * float(np.sum(residual[members])) / denom

            contribution = tree.value[leaf_of]
            factor = 1.0
            for _ in range(_MAX_HALVINGS):
                loss = _log_loss(y, _sigmoid(scores + factor * contribution))
                if loss <= trace[-1]:
                    break
                factor *= 0.5
            else:
                factor = 0.0
                loss = trace[-1]
            tree.value *= factor
            scores = scores + tree.value[leaf_of]
            trace.append(loss)
            trees.append(tree)
        return cls(config, list(data.X.columns), init_score, lr, trees, trace)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.float64)
        scores = np.full(X.shape[0], self.init_score)
        for tree in self.trees:
            scores += tree.predict(X)
        return _sigmoid(scores)

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return float(self.predict_proba_matrix(row[None, :])[0])

    def params_to_dict(self) -> dict:
        return {
            "init_score": self.init_score,
            "learning_rate": self.learning_rate,
            "trees": [t.to_dict() for t in self.trees],
        }

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "GradientBoostingModel":
        return cls(
            config,
            columns,
            float(params["init_score"]),
            float(params["learning_rate"]),
            [TreeArrays.from_dict(t) for t in params["trees"]],
            loss_trace=[],
        )
