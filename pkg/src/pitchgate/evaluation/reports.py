"""Error-analysis reports and text rendering of evaluation results."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..classifiers import decide
from ..features import FeatureSpec, assemble
from .correlation import CorrelationReport, FactorAgreement
from .metrics import ConfusionMatrix, MetricReport


@dataclass
class MisclassifiedPitch:
    pitch_id: str
    actual: int
    confidence_pct: float  # model deal probability, percent
    ai_total: float
    human_total: float | None
    error_type: str  # "FN" or "FP"

    def to_json_dict(self) -> dict:
        return {
            "pitch_id": self.pitch_id,
            "actual": self.actual,
            "confidence_pct": self.confidence_pct,
            "ai_total": self.ai_total,
            "human_total": self.human_total,
            "error_type": self.error_type,
        }


def misclassification_report(
    model,
    assessed: list,
    spec: FeatureSpec,
    human_totals: dict[str, float] | None = None,
    threshold: float = 0.5,
) -> list[MisclassifiedPitch]:
    """Rows only for pitches the model gets wrong at the decision threshold."""
    if not assessed:
        raise ValueError("no assessed pitches to report on")
    X, y = assemble(assessed, spec)
    probas = model.predict_proba_matrix(X.values)
    rows: list[MisclassifiedPitch] = []
    for item, p, label in zip(assessed, probas, y.labels):
        predicted = decide(float(p), threshold)
        if predicted == label:
            continue
        rows.append(
            MisclassifiedPitch(
                pitch_id=item.pitch.pitch_id,
                actual=int(label),
                confidence_pct=float(p) * 100.0,
                ai_total=item.scores.total,
                human_total=(human_totals or {}).get(item.pitch.pitch_id),
                error_type="FN" if label == 1 else "FP",
            )
        )
    return rows


def _fmt_metric(value: float | None) -> str:
    return "-" if value is None else f"{value:.3f}"


def render_metric_table(reports: dict[str, MetricReport]) -> str:
    """Side-by-side metric columns, one per named run."""
    names = list(reports)
    lines = ["Metric        " + "".join(f"{n:>22}" for n in names)]
    rows = [
        ("Accuracy", lambda r: f"{r.accuracy * 100:.1f}%"),
        ("Precision", lambda r: _fmt_metric(r.precision)),
        ("Recall", lambda r: _fmt_metric(r.recall)),
        ("F1", lambda r: _fmt_metric(r.f1)),
        ("Specificity", lambda r: _fmt_metric(r.specificity)),
        ("Balanced", lambda r: _fmt_metric(r.balanced)),
        ("ROC AUC", lambda r: _fmt_metric(r.roc_auc)),
    ]
    for label, extract in rows:
        lines.append(f"{label:<14}" + "".join(f"{extract(reports[n]):>22}" for n in names))
    flagged = {n: sorted(reports[n].undefined) for n in names if reports[n].undefined}
    for name, metrics in flagged.items():
        lines.append(f"  note: {name} has undefined metrics reported as 0: {metrics}")
    return "\n".join(lines)


def render_confusion(cm: ConfusionMatrix, title: str) -> str:
    return "\n".join(
        [
            f"{title} (N={cm.total})",
            "              pred Deal   pred NoDeal",
            f"actual Deal   {cm.tp:>9}   {cm.fn:>11}",
            f"actual NoDeal {cm.fp:>9}   {cm.tn:>11}",
        ]
    )


def render_agreement(report: CorrelationReport) -> str:
    return "\n".join(
        [
            "Model vs human grading agreement",
            f"  Spearman's rho: {report.spearman_rho:.3f} (p={report.spearman_p:.2e})",
            f"  Pearson's r:    {report.pearson_r:.3f} (p={report.pearson_p:.2e})",
            f"  MAE (pts):      {report.mae:.1f}",
        ]
    )


def render_factor_agreement(rows: list[FactorAgreement]) -> str:
    lines = ["Per-factor score differences (model minus human)"]
    lines.append(f"{'Factor':<32}{'Mean diff (pts)':>16}{'Pearson r':>12}")
    for row in rows:
        r = "-" if row.pearson_r is None else f"{row.pearson_r:.2f}"
        lines.append(
            f"F{row.factor.value} - {row.factor.display_name:<27}"
            f"{row.mean_difference:>+16.1f}{r:>12}"
        )
    return "\n".join(lines)


def render_importance(importances: dict[str, float]) -> str:
    lines = ["Permutation feature importance"]
    ordered = sorted(importances.items(), key=lambda kv: -kv[1])
    for name, weight in ordered:
        lines.append(f"  {name:<12} {weight:+.3f}")
    return "\n".join(lines)


def render_misclassifications(rows: list[MisclassifiedPitch]) -> str:
    lines = ["Misclassified pitches"]
    if not rows:
        lines.append("  (none)")
        return "\n".join(lines)
    lines.append(
        f"{'Pitch':<14}{'Outcome':>8}{'Confidence':>12}{'Model total':>13}"
        f"{'Human total':>13}{'Error':>7}"
    )
    for row in rows:
        human = "" if row.human_total is None else f"{row.human_total:.0f}"
        lines.append(
            f"{row.pitch_id:<14}{row.actual:>8}{row.confidence_pct:>11.1f}%"
            f"{row.ai_total:>13.0f}{human:>13}{row.error_type:>7}"
        )
    return "\n".join(lines)
