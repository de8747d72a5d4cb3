"""From-scratch outcome classifiers behind one training interface.

Five algorithms (Gaussian naive Bayes, logistic regression, decision tree,
random forest, gradient boosting) plus a soft-voting ensemble. Training is
deterministic given (config, data, seed); trained models serialize to a
versioned JSON document that restores bit-identical predictions.
"""

from __future__ import annotations

import numpy as np

from .base import (
    ALGORITHMS,
    ClassifierError,
    ColumnMismatch,
    EmptyEnsemble,
    HYPERPARAMETER_SCHEMAS,
    InvalidHyperparameter,
    ModelConfig,
    SingleClassTraining,
    TrainingSet,
    UnknownAlgorithm,
    WeightMismatch,
    decide,
    validate_row,
)
from .bayes import GaussianNBModel
from .boosting import GradientBoostingModel
from .ensemble import SoftVoteModel, soft_vote
from .forest import DecisionTreeModel, RandomForestModel
from .linear import LogisticRegressionModel

MODEL_FORMAT_VERSION = 1

_MODEL_CLASSES = {
    cls.algorithm: cls
    for cls in (
        GaussianNBModel,
        LogisticRegressionModel,
        DecisionTreeModel,
        RandomForestModel,
        GradientBoostingModel,
        SoftVoteModel,
    )
}


def train(config: ModelConfig, data: TrainingSet):
    """Fit the configured algorithm; deterministic for fixed config and data."""
    return _MODEL_CLASSES[config.algorithm].fit(config, data)


def predict_proba(model, row: np.ndarray) -> float:
    """Deal probability for one feature row matching the model's columns."""
    return model.predict_proba(row)


def model_to_dict(model) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "algorithm": model.algorithm,
        "config": model.config.to_json_dict(),
        "columns": list(model.columns),
        "params": model.params_to_dict(),
    }


def model_from_dict(payload: dict):
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ClassifierError(f"unsupported model format version: {version}")
    algorithm = payload["algorithm"]
    if algorithm not in _MODEL_CLASSES:
        raise UnknownAlgorithm(f"unknown algorithm token: {algorithm!r}")
    config = ModelConfig.from_json_dict(payload["config"])
    return _MODEL_CLASSES[algorithm].from_params(
        config, list(payload["columns"]), payload["params"]
    )


__all__ = [
    "ALGORITHMS",
    "ClassifierError",
    "ColumnMismatch",
    "DecisionTreeModel",
    "EmptyEnsemble",
    "GaussianNBModel",
    "GradientBoostingModel",
    "HYPERPARAMETER_SCHEMAS",
    "InvalidHyperparameter",
    "LogisticRegressionModel",
    "MODEL_FORMAT_VERSION",
    "ModelConfig",
    "RandomForestModel",
    "SingleClassTraining",
    "SoftVoteModel",
    "TrainingSet",
    "UnknownAlgorithm",
    "WeightMismatch",
    "decide",
    "model_from_dict",
    "model_to_dict",
    "predict_proba",
    "soft_vote",
    "train",
    "validate_row",
]
