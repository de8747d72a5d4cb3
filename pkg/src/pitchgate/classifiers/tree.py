"""Binary decision trees on flat node arrays, shared by the tree, forest,
and boosting models. Gini for classification, squared error for the
regression trees inside gradient boosting."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import apply_tree, best_split_gini, best_split_sse


@dataclass
class TreeArrays:
    """Flat node storage: feature == -1 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray

    def apply(self, X: np.ndarray) -> np.ndarray:
        """Leaf node index for every row."""
        return apply_tree(self.feature, self.threshold, self.left, self.right, X)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return self.value[self.apply(X)]

    @property
    def n_nodes(self) -> int:
        return int(self.feature.shape[0])

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "TreeArrays":
        return cls(
            feature=np.array(payload["feature"], dtype=np.int64),
            threshold=np.array(payload["threshold"], dtype=np.float64),
            left=np.array(payload["left"], dtype=np.int64),
            right=np.array(payload["right"], dtype=np.int64),
            value=np.array(payload["value"], dtype=np.float64),
        )


class _Builder:
    def __init__(
        self,
        criterion: str,
        max_depth: int | None,
        min_samples_leaf: int,
        rng: np.random.Generator | None,
        n_feature_candidates: int | None,
    ):
        self.criterion = criterion
        self.max_depth = max_depth
        self.min_samples_leaf = min_samples_leaf
        self.rng = rng
        self.n_feature_candidates = n_feature_candidates
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def _leaf_value(self, y: np.ndarray) -> float:
        return float(np.mean(y))

    def _candidates(self, d: int) -> np.ndarray:
        if self.n_feature_candidates is None or self.n_feature_candidates >= d:
            return np.arange(d, dtype=np.int64)
        assert self.rng is not None
        chosen = self.rng.choice(d, size=self.n_feature_candidates, replace=False)
        return np.sort(chosen).astype(np.int64)

    def build(self, X: np.ndarray, y: np.ndarray, node: int, depth: int) -> None:
        n = X.shape[0]
        pure = bool(np.all(y == y[0]))
        depth_ok = self.max_depth is None or depth < self.max_depth
        if pure or not depth_ok or n < 2 * self.min_samples_leaf:
            self.value[node] = self._leaf_value(y)
            return
        feat_ids = self._candidates(X.shape[1])
        if self.criterion == "gini":
            yi = y.astype(np.int64)
            feat, thr, _ = best_split_gini(X, yi, feat_ids, self.min_samples_leaf)
        else:
            feat, thr, _ = best_split_sse(
                X, y.astype(np.float64), feat_ids, self.min_samples_leaf
            )
        if feat < 0:
            self.value[node] = self._leaf_value(y)
            return
        mask = X[:, feat] <= thr
        self.feature[node] = int(feat)
        self.threshold[node] = float(thr)
        left_id = self._new_node()
        self.left[node] = left_id
        self.build(np.ascontiguousarray(X[mask]), y[mask], left_id, depth + 1)
        right_id = self._new_node()
        self.right[node] = right_id
        self.build(np.ascontiguousarray(X[~mask]), y[~mask], right_id, depth + 1)


def build_tree(
    X: np.ndarray,
    y: np.ndarray,
    criterion: str = "gini",
    max_depth: int | None = None,
    min_samples_leaf: int = 1,
    rng: np.random.Generator | None = None,
    n_feature_candidates: int | None = None,
) -> TreeArrays:
    """Grow a tree; leaf values are class-1 fractions (gini) or means (sse).

    With n_feature_candidates set, each split considers a random sorted
    subset of columns drawn from `rng`.
    """
    X = np.ascontiguousarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    builder = _Builder(criterion, max_depth, min_samples_leaf, rng, n_feature_candidates)
    root = builder._new_node()
    builder.build(X, y, root, 0)
    return TreeArrays(
        feature=np.array(builder.feature, dtype=np.int64),
        threshold=np.array(builder.threshold, dtype=np.float64),
        left=np.array(builder.left, dtype=np.int64),
        right=np.array(builder.right, dtype=np.int64),
        value=np.array(builder.value, dtype=np.float64),
    )
