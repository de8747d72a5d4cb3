"""Training interface shared by all classifiers: configs, training sets,
errors, and the decision rule."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..features import FeatureMatrix, LabelVector


class ClassifierError(Exception):
    pass


class SingleClassTraining(ClassifierError):
    pass


class ColumnMismatch(ClassifierError):
    pass


class EmptyEnsemble(ClassifierError):
    pass


class WeightMismatch(ClassifierError):
    pass


class UnknownAlgorithm(ClassifierError):
    pass


class InvalidHyperparameter(ClassifierError):
    pass


# Hyperparameter schema per algorithm: name -> (type, default).
HYPERPARAMETER_SCHEMAS: dict[str, dict[str, tuple[type, object]]] = {
    "gaussian_nb": {"variance_floor": (float, 1e-9)},
    "logistic_regression": {
        "learning_rate": (float, 0.1),
        "iterations": (int, 500),
        "l2": (float, 1e-3),
    },
    "decision_tree": {
        "max_depth": (int, 4),  # None allowed for unlimited depth
        "min_samples_leaf": (int, 2),
    },
    "random_forest": {
        "n_trees": (int, 200),
        "bootstrap": (bool, True),
        "max_depth": (int, 6),
        "min_samples_leaf": (int, 2),
        "feature_subsample": (bool, True),
    },
    "gradient_boosting": {
        "stages": (int, 100),
        "learning_rate": (float, 0.1),
        "max_depth": (int, 2),
    },
    "soft_vote": {},
}

ALGORITHMS = tuple(HYPERPARAMETER_SCHEMAS)


@dataclass(frozen=True)
class ModelConfig:
    """Algorithm token, validated hyperparameters, and the training seed."""

    algorithm: str
    params: tuple[tuple[str, object], ...] = ()
    seed: int = 0
    members: tuple["ModelConfig", ...] = ()
    weights: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.algorithm not in HYPERPARAMETER_SCHEMAS:
            raise UnknownAlgorithm(f"unknown algorithm token: {self.algorithm!r}")
        schema = HYPERPARAMETER_SCHEMAS[self.algorithm]
        normalized = []
        for key, value in dict(self.params).items():
            if key not in schema:
                raise InvalidHyperparameter(
                    f"{self.algorithm} does not accept hyperparameter {key!r}"
                )
            kind, _ = schema[key]
            if value is None and key == "max_depth":
                pass
            elif kind is bool:
                if not isinstance(value, bool):
                    raise InvalidHyperparameter(f"{key} must be a bool, got {value!r}")
            elif kind is int:
                if isinstance(value, bool) or not isinstance(value, int):
                    raise InvalidHyperparameter(f"{key} must be an int, got {value!r}")
            elif kind is float:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise InvalidHyperparameter(f"{key} must be a number, got {value!r}")
                value = float(value)
            normalized.append((key, value))
        object.__setattr__(self, "params", tuple(sorted(normalized)))
        if self.algorithm == "soft_vote":
            if not self.members:
                raise EmptyEnsemble("soft_vote requires at least one member config")
            if self.weights is not None:
                if len(self.weights) != len(self.members):
                    raise WeightMismatch("weights length must match member count")
                if any(w < 0 for w in self.weights):
                    raise WeightMismatch("weights must be nonnegative")
                if not any(w > 0 for w in self.weights):
                    raise WeightMismatch("weights must not all be zero")
        elif self.members:
            raise InvalidHyperparameter(f"{self.algorithm} does not take members")

    def hyperparameters(self) -> dict:
        """Schema defaults overlaid with explicit params."""
        schema = HYPERPARAMETER_SCHEMAS[self.algorithm]
        merged = {key: default for key, (_, default) in schema.items()}
        merged.update(dict(self.params))
        return merged

    @classmethod
    def make(
        cls,
        algorithm: str,
        seed: int = 0,
        members: tuple["ModelConfig", ...] = (),
        weights: tuple[float, ...] | None = None,
        **params,
    ) -> "ModelConfig":
        return cls(
            algorithm=algorithm,
            params=tuple(params.items()),
            seed=seed,
            members=members,
            weights=weights,
        )

    def to_text(self) -> str:
        """`algorithm key=value ...` token form."""
        parts = [self.algorithm]
        for key, value in self.params:
            parts.append(f"{key}={value}")
        if self.algorithm == "soft_vote":
            parts.append("members=" + "+".join(m.algorithm for m in self.members))
        return " ".join(parts)

    @classmethod
    def from_text(cls, text: str, seed: int = 0) -> "ModelConfig":
        tokens = text.split()
        if not tokens:
            raise UnknownAlgorithm("empty model config")
        algorithm = tokens[0]
        params = {}
        members: tuple[ModelConfig, ...] = ()
        for token in tokens[1:]:
            if "=" not in token:
                raise InvalidHyperparameter(f"expected key=value, got {token!r}")
            key, raw = token.split("=", 1)
            if key == "members":
                members = tuple(
                    cls(algorithm=name, seed=seed) for name in raw.split("+") if name
                )
                continue
            params[key] = _parse_value(raw)
        return cls(algorithm=algorithm, params=tuple(params.items()), seed=seed,
                   members=members)

    def to_json_dict(self) -> dict:
        out = {
            "algorithm": self.algorithm,
            "params": {k: v for k, v in self.params},
            "seed": self.seed,
        }
        if self.members:
            out["members"] = [m.to_json_dict() for m in self.members]
        if self.weights is not None:
            out["weights"] = list(self.weights)
        return out

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ModelConfig":
        members = tuple(
            cls.from_json_dict(m) for m in payload.get("members", [])
        )
        weights = payload.get("weights")
        return cls(
            algorithm=payload["algorithm"],
            params=tuple(payload.get("params", {}).items()),
            seed=int(payload.get("seed", 0)),
            members=members,
            weights=tuple(weights) if weights is not None else None,
        )


def _parse_value(raw: str):
    lowered = raw.lower()
    if lowered in ("true", "false"):
        return lowered == "true"
    if lowered in ("none", "null"):
        return None
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return float(raw)
    except ValueError:
        return raw


@dataclass
class TrainingSet:
    X: FeatureMatrix
    y: LabelVector

    def __post_init__(self) -> None:
        if self.X.n_rows != len(self.y):
            raise ValueError("feature matrix and labels are misaligned")

    def require_both_classes(self) -> None:
        labels = self.y.labels
        if np.all(labels == labels[0]):
            raise SingleClassTraining("training data contains a single class")


def decide(p: float, threshold: float = 0.5) -> int:
    """Deal (1) iff p strictly exceeds the threshold."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    return 1 if p > threshold else 0


def validate_row(columns: list[str], row: np.ndarray) -> np.ndarray:
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1 or row.shape[0] != len(columns):
        raise ColumnMismatch(
            f"expected {len(columns)} feature values, got shape {row.shape}"
        )
    return row
