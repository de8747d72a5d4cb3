"""Decision tree and random forest classifiers.

The forest averages per-tree class-1 fractions over trees grown on bootstrap
samples with per-split feature subsampling (ceil(sqrt(d)) candidates).
Turning both off with a single tree reproduces the plain decision tree.
"""

from __future__ import annotations

import math

import numpy as np

from .base import ModelConfig, TrainingSet, validate_row
from .tree import TreeArrays, build_tree


class DecisionTreeModel:
    algorithm = "decision_tree"

    def __init__(self, config: ModelConfig, columns: list[str], tree: TreeArrays):
        self.config = config
        self.columns = columns
        self.tree = tree

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "DecisionTreeModel":
        data.require_both_classes()
        hp = config.hyperparameters()
        tree = build_tree(
            data.X.values,
            data.y.labels,
            criterion="gini",
            max_depth=hp["max_depth"],
            min_samples_leaf=hp["min_samples_leaf"],
        )
        return cls(config, list(data.X.columns), tree)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        return self.tree.predict(np.ascontiguousarray(X, dtype=np.float64))

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return float(self.predict_proba_matrix(row[None, :])[0])

    def params_to_dict(self) -> dict:
        return {"tree": self.tree.to_dict()}

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "DecisionTreeModel":
        return cls(config, columns, TreeArrays.from_dict(params["tree"]))


class RandomForestModel:
    algorithm = "random_forest"

    def __init__(self, config: ModelConfig, columns: list[str], trees: list[TreeArrays]):
        self.config = config
        self.columns = columns
        self.trees = trees

    @classmethod
    def fit(cls, config: ModelConfig, data: TrainingSet) -> "RandomForestModel":
        data.require_both_classes()
        hp = config.hyperparameters()
        X = data.X.values
        y = data.y.labels
        n, d = X.shape
        n_candidates = math.ceil(math.sqrt(d)) if hp["feature_subsample"] else None
        seeds = np.random.SeedSequence(config.seed).spawn(hp["n_trees"])
        trees: list[TreeArrays] = []
        for t in range(hp["n_trees"]):
            rng = np.random.default_rng(seeds[t])
            if hp["bootstrap"]:
                idx = rng.integers(0, n, size=n)
                Xt, yt = X[idx], y[idx]
            else:
                Xt, yt = X, y
            trees.append(
                build_tree(
                    Xt,
                    yt,
                    criterion="gini",
                    max_depth=hp["max_depth"],
                    min_samples_leaf=hp["min_samples_leaf"],
                    rng=rng,
                    n_feature_candidates=n_candidates,
                )
            )
        return cls(config, list(data.X.columns), trees)

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.ascontiguousarray(X, dtype=np.float64)
        acc = np.zeros(X.shape[0])
        for tree in self.trees:
            acc += tree.predict(X)
        return acc / len(self.trees)

    def predict_proba(self, row: np.ndarray) -> float:
        row = validate_row(self.columns, row)
        return float(self.predict_proba_matrix(row[None, :])[0])

    def params_to_dict(self) -> dict:
        return {"trees": [t.to_dict() for t in self.trees]}

    @classmethod
    def from_params(
        cls, config: ModelConfig, columns: list[str], params: dict
    ) -> "RandomForestModel":
        return cls(config, columns, [TreeArrays.from_dict(t) for t in params["trees"]])
