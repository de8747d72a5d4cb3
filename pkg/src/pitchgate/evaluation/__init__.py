"""Measurement machinery: confusion metrics, agreement statistics,
cross-validation, grid search, permutation importance, and error reports."""

from .correlation import (
    ConstantInput,
    CorrelationReport,
    FactorAgreement,
    MisalignedSets,
    TooShort,
    agreement_report,
    factor_agreement,
    pearson,
    spearman,
)
from .crossval import (
    OBJECTIVES,
    AllConfigsFailed,
    ConfigResult,
    CvPlan,
    GridSearchResult,
    TooFewPerClass,
    grid_search,
    score_predictions,
    stratified_kfold,
)
from .importance import ImportanceReport, permutation_importance
from .metrics import (
    ConfusionMatrix,
    EmptyMatrix,
    LengthMismatch,
    MetricError,
    MetricReport,
    SingleClass,
    binary_metrics,
    confusion,
    mean_absolute_error,
    roc_auc,
)
from .reports import (
    MisclassifiedPitch,
    misclassification_report,
    render_agreement,
    render_confusion,
    render_factor_agreement,
    render_importance,
    render_metric_table,
    render_misclassifications,
)

__all__ = [
    "AllConfigsFailed",
    "ConfigResult",
    "ConfusionMatrix",
    "ConstantInput",
    "CorrelationReport",
    "CvPlan",
    "EmptyMatrix",
    "FactorAgreement",
    "GridSearchResult",
    "ImportanceReport",
    "LengthMismatch",
    "MetricError",
    "MetricReport",
    "MisalignedSets",
    "MisclassifiedPitch",
    "OBJECTIVES",
    "SingleClass",
    "TooFewPerClass",
    "TooShort",
    "agreement_report",
    "binary_metrics",
    "confusion",
    "factor_agreement",
    "grid_search",
    "mean_absolute_error",
    "misclassification_report",
    "pearson",
    "permutation_importance",
    "render_agreement",
    "render_confusion",
    "render_factor_agreement",
    "render_importance",
    "render_metric_table",
    "render_misclassifications",
    "roc_auc",
    "score_predictions",
    "spearman",
    "stratified_kfold",
]
