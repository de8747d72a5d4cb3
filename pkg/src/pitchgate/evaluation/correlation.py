"""Agreement statistics: Pearson, Spearman (average ranks), MAE, and the
per-factor disagreement report.

Two-sided p-values come from the t statistic with n-2 degrees of freedom,
evaluated through a regularized incomplete beta continued fraction; the
test suite checks them against an independent statistics library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..rubric import ALL_FACTORS, Factor
from .metrics import LengthMismatch, MetricError, _average_ranks, mean_absolute_error


class ConstantInput(MetricError):
    pass


class TooShort(MetricError):
    pass


class MisalignedSets(MetricError):
    pass


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta function (Lentz)."""
    max_iter = 300
    eps = 3e-16
    fpmin = 1e-300
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < fpmin:
        d = fpmin
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < fpmin:
            d = fpmin
        c = 1.0 + aa / c
        if abs(c) < fpmin:
            c = fpmin
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            break
    return h


def _betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    ln_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    front = math.exp(ln_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def _t_sf_two_sided(t: float, df: int) -> float:
    """P(|T| >= t) for Student's t with df degrees of freedom."""
    if math.isinf(t):
        return 0.0
    x = df / (df + t * t)
    return _betainc(df / 2.0, 0.5, x)


def _correlation_p(r: float, n: int) -> float:
    df = n - 2
    denom = 1.0 - r * r
    if denom <= 0.0:
        return 0.0
    t = abs(r) * math.sqrt(df / denom)
    return _t_sf_two_sided(t, df)


def pearson(x: list[float], y: list[float]) -> tuple[float, float]:
    """Sample linear correlation and its two-sided t-test p-value."""
    if len(x) != len(y):
        raise LengthMismatch("vectors are misaligned")
    n = len(x)
    if n < 3:
        raise TooShort("correlation needs at least 3 pairs")
    xv = np.asarray(x, dtype=np.float64)
    yv = np.asarray(y, dtype=np.float64)
    xd = xv - xv.mean()
    yd = yv - yv.mean()
    sx = float(np.sqrt(np.sum(xd * xd)))
    sy = float(np.sqrt(np.sum(yd * yd)))
    if sx == 0.0 or sy == 0.0:
        raise ConstantInput("correlation undefined for a constant vector")
    r = float(np.sum(xd * yd)) / (sx * sy)
    r = max(-1.0, min(1.0, r))
    return r, _correlation_p(r, n)


def spearman(x: list[float], y: list[float]) -> tuple[float, float]:
    """Rank correlation with average ranks for ties; p-value as in pearson."""
    if len(x) != len(y):
        raise LengthMismatch("vectors are misaligned")
    if len(x) < 3:
        raise TooShort("correlation needs at least 3 pairs")
    rx = _average_ranks(np.asarray(x, dtype=np.float64))
    ry = _average_ranks(np.asarray(y, dtype=np.float64))
    return pearson(list(rx), list(ry))


@dataclass
class CorrelationReport:
    spearman_rho: float
    spearman_p: float
    pearson_r: float
    pearson_p: float
    mae: float

    def to_json_dict(self) -> dict:
        return {
            "spearman_rho": self.spearman_rho,
            "spearman_p": self.spearman_p,
            "pearson_r": self.pearson_r,
            "pearson_p": self.pearson_p,
            "mae": self.mae,
        }


def agreement_report(
    ai_totals: list[float], human_totals: list[float]
) -> CorrelationReport:
    """Spearman, Pearson, and MAE over paired total scores."""
    rho, rho_p = spearman(ai_totals, human_totals)
    r, r_p = pearson(ai_totals, human_totals)
    mae = mean_absolute_error(ai_totals, human_totals)
    return CorrelationReport(
        spearman_rho=rho, spearman_p=rho_p, pearson_r=r, pearson_p=r_p, mae=mae
    )


@dataclass
class FactorAgreement:
    factor: Factor
    mean_difference: float  # model minus human, in points
    pearson_r: float | None  # None when either side is constant

    def to_json_dict(self) -> dict:
        return {
            "factor": self.factor.key,
            "name": self.factor.display_name,
            "mean_difference": self.mean_difference,
            "pearson_r": self.pearson_r,
        }


def factor_agreement(
    ai: list, human: list[tuple[str, object]]
) -> list[FactorAgreement]:
    """Per-factor mean difference (model minus human) and Pearson r.

    `ai` holds assessed pitches, `human` pairs of (pitch_id, ScoreVector).
    The result is sorted by absolute mean difference, largest first.
    """
    human_map = {pid: vec for pid, vec in human}
    ai_map = {item.pitch.pitch_id: item.scores for item in ai}
    if set(human_map) != set(ai_map):
        raise MisalignedSets("model and human gradings cover different pitches")
    if len(ai_map) < 3:
        raise TooShort("factor agreement needs at least 3 pitches")
    order = [item.pitch.pitch_id for item in ai]
    rows: list[FactorAgreement] = []
    for factor in ALL_FACTORS:
        a = [ai_map[p].scores[factor] for p in order]
        h = [human_map[p].scores[factor] for p in order]
        mean_diff = float(np.mean(np.asarray(a) - np.asarray(h)))
        try:
            r, _ = pearson(a, h)
        except ConstantInput:
            r = None
        rows.append(FactorAgreement(factor=factor, mean_difference=mean_diff, pearson_r=r))
    rows.sort(key=lambda row: (-abs(row.mean_difference), row.factor.value))
    return rows
