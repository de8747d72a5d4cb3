import numpy as np
import pytest
import scipy.stats

from conftest import make_assessed
from oracles import (
    oracle_confusion,
    oracle_mae,
    oracle_metrics,
    oracle_pearson,
    oracle_roc_auc,
    oracle_spearman,
)

from pitchgate.evaluation import (
    ConfusionMatrix,
    ConstantInput,
    EmptyMatrix,
    LengthMismatch,
    MisalignedSets,
    SingleClass,
    TooShort,
    agreement_report,
    binary_metrics,
    confusion,
    factor_agreement,
    mean_absolute_error,
    pearson,
    roc_auc,
    spearman,
)
from pitchgate.rubric import ALL_FACTORS, Factor, ScoreVector


def rounds_to(value: float, target: float, places: int) -> bool:
    return abs(value - target) < 0.5 * 10 ** (-places)


def reconstruct_n31_matrix():
    """All confusion matrices with N=31 matching the published roundings
    plus the misclassification counts (6 FN, 1 FP)."""
    hits = []
    for tp in range(32):
        for fp in range(32 - tp):
            for fn in range(32 - tp - fp):
                tn = 31 - tp - fp - fn
                m = oracle_metrics(tp, fp, fn, tn)
                if (
                    rounds_to(m["accuracy"] * 100, 77.4, 1)
                    and rounds_to(m["precision"], 0.92, 2)
                    and rounds_to(m["recall"], 0.67, 2)
                    and rounds_to(m["f1"], 0.77, 2)
                    and rounds_to(m["specificity"], 0.92, 2)
                    and fn == 6
                    and fp == 1
                ):
                    hits.append((tp, fp, fn, tn))
    return hits


class TestConfusion:
    def test_identity_predictions(self):
        actual = [1] * 6 + [0] * 4
        cm = confusion(actual, actual)
        assert (cm.tp, cm.tn, cm.fp, cm.fn) == (6, 4, 0, 0)

    def test_constant_deal_predictor(self):
        actual = [1] * 6 + [0] * 4
        cm = confusion([1] * 10, actual)
        assert (cm.tp, cm.fp, cm.fn, cm.tn) == (6, 4, 0, 0)

    def test_reconstructed_comparison_matrix_is_unique(self):
        hits = reconstruct_n31_matrix()
        assert hits == [(12, 1, 6, 12)]

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            confusion([1], [1, 0])

    def test_empty(self):
        with pytest.raises(EmptyMatrix):
            confusion([], [])


class TestBinaryMetrics:
    def test_reconstructed_matrix_matches_published_roundings(self):
        report = binary_metrics(ConfusionMatrix(tp=12, fp=1, fn=6, tn=12))
        assert rounds_to(report.accuracy * 100, 77.4, 1)
        assert rounds_to(report.precision, 0.92, 2)
        assert rounds_to(report.recall, 0.67, 2)
        assert rounds_to(report.f1, 0.77, 2)
        assert rounds_to(report.specificity, 0.92, 2)
        assert report.accuracy == pytest.approx(24 / 31, abs=1e-12)
        assert report.precision == pytest.approx(12 / 13, abs=1e-12)
        assert report.recall == pytest.approx(12 / 18, abs=1e-12)

    def test_fifty_one_of_sixty_accuracy_is_085_exactly(self):
        report = binary_metrics(ConfusionMatrix(tp=31, fp=5, fn=4, tn=20))
        assert report.accuracy == 0.85

    def test_perfect_two_row_classifier(self):
        report = binary_metrics(ConfusionMatrix(tp=1, fp=0, fn=0, tn=1))
        for name in ("accuracy", "precision", "recall", "f1", "specificity", "balanced"):
            assert getattr(report, name) == 1.0
        assert not report.undefined

    def test_balanced_formula_exact(self):
        report = binary_metrics(ConfusionMatrix(tp=5, fp=3, fn=2, tn=7))
        assert report.balanced == (report.f1 + report.accuracy + report.specificity) / 3

    def test_zero_denominator_reports_zero_with_flag(self):
        report = binary_metrics(ConfusionMatrix(tp=0, fp=0, fn=4, tn=6))
        assert report.precision == 0.0
        assert "precision" in report.undefined
        assert "f1" in report.undefined

    def test_empty_matrix_rejected(self):
        with pytest.raises(EmptyMatrix):
            binary_metrics(ConfusionMatrix(tp=0, fp=0, fn=0, tn=0))


class TestRocAuc:
    def test_perfect_separation(self):
        assert roc_auc([0.9, 0.8, 0.4, 0.3], [1, 1, 0, 0]) == 1.0

    def test_three_of_four_pairs(self):
        assert roc_auc([0.9, 0.4, 0.8, 0.3], [1, 1, 0, 0]) == 0.75

    def test_all_ties_give_half(self):
        assert roc_auc([0.5, 0.5, 0.5, 0.5], [1, 1, 0, 0]) == 0.5

    def test_single_class_rejected(self):
        with pytest.raises(SingleClass):
            roc_auc([0.1, 0.2], [1, 1])

    def test_invariant_under_monotone_transform(self):
        rng = np.random.default_rng(2)
        scores = rng.random(25)
        labels = (rng.random(25) > 0.4).astype(int)
        labels[:2] = [0, 1]
        base = roc_auc(list(scores), list(labels))
        for transform in (np.exp, lambda s: s**3 + 5, lambda s: np.log(s + 1)):
            assert roc_auc(list(transform(scores)), list(labels)) == pytest.approx(
                base, abs=1e-12
            )


class TestPearson:
    def test_exact_positive_linearity(self):
        x = [1.0, 2.0, 5.0, 7.0]
        r, p = pearson(x, [2 * v + 1 for v in x])
        assert r == pytest.approx(1.0, abs=1e-12)
        assert p == pytest.approx(0.0, abs=1e-12)

    def test_exact_negative_linearity(self):
        x = [1.0, 2.0, 5.0, 7.0]
        r, _ = pearson(x, [-v for v in x])
        assert r == pytest.approx(-1.0, abs=1e-12)

    def test_hand_worked_example(self):
        r, _ = pearson([1, 2, 3, 4], [1, 3, 2, 4])
        assert r == pytest.approx(0.8, abs=1e-12)

    def test_affine_invariance_and_sign_flip(self):
        rng = np.random.default_rng(5)
        x = list(rng.random(10))
        y = list(rng.random(10))
        r, _ = pearson(x, y)
        r_pos, _ = pearson([3 * v + 2 for v in x], y)
        r_neg, _ = pearson([-3 * v + 2 for v in x], y)
        assert r_pos == pytest.approx(r, abs=1e-12)
        assert r_neg == pytest.approx(-r, abs=1e-12)

    def test_errors(self):
        with pytest.raises(TooShort):
            pearson([1, 2], [3, 4])
        with pytest.raises(ConstantInput):
            pearson([1, 1, 1], [1, 2, 3])

    def test_p_value_matches_reference_library(self):
        rng = np.random.default_rng(6)
        for n in (5, 12, 31):
            x = rng.normal(size=n)
            y = x * 0.5 + rng.normal(size=n)
            r, p = pearson(list(x), list(y))
            ref = scipy.stats.pearsonr(x, y)
            assert r == pytest.approx(ref.statistic, abs=1e-12)
            assert p == pytest.approx(ref.pvalue, abs=1e-9)


class TestSpearman:
    def test_monotone_identity(self):
        rho, _ = spearman([1, 2, 3, 5], [10, 20, 25, 90])
        assert rho == pytest.approx(1.0, abs=1e-12)

    def test_monotone_reversal(self):
        rho, _ = spearman([1, 2, 3, 5], [90, 25, 20, 10])
        assert rho == pytest.approx(-1.0, abs=1e-12)

    def test_tied_pairs_still_perfect(self):
        rho, _ = spearman([1, 2, 2, 4], [10, 20, 20, 40])
        assert rho == pytest.approx(1.0, abs=1e-12)

    def test_invariant_under_strictly_increasing_transforms(self):
        rng = np.random.default_rng(7)
        x = rng.random(20)
        y = rng.random(20)
        base, _ = spearman(list(x), list(y))
        fx, _ = spearman(list(np.exp(x)), list(y**3))
        assert fx == pytest.approx(base, abs=1e-12)

    def test_p_value_matches_reference_library(self):
        rng = np.random.default_rng(8)
        x = rng.normal(size=31)
        y = x + rng.normal(size=31)
        rho, p = spearman(list(x), list(y))
        ref = scipy.stats.spearmanr(x, y)
        assert rho == pytest.approx(ref.statistic, abs=1e-12)
        assert p == pytest.approx(ref.pvalue, abs=1e-9)


class TestMae:
    def test_zero_on_identical(self):
        assert mean_absolute_error([1, 2, 3], [1, 2, 3]) == 0.0

    def test_hand_example(self):
        assert mean_absolute_error([1, 2, 3], [2, 2, 5]) == pytest.approx(1.0)

    def test_single_maximal_deviation(self):
        assert mean_absolute_error([80.0], [0.0]) == 80.0

    def test_symmetry(self):
        rng = np.random.default_rng(9)
        x, y = list(rng.random(15)), list(rng.random(15))
        assert mean_absolute_error(x, y) == mean_absolute_error(y, x)


class TestAgreementReport:
    def test_identical_vectors(self):
        totals = [40.0, 55.0, 62.0, 30.0, 71.0]
        report = agreement_report(totals, totals)
        assert report.spearman_rho == pytest.approx(1.0, abs=1e-12)
        assert report.pearson_r == pytest.approx(1.0, abs=1e-12)
        assert report.mae == 0.0

    def test_reversed_equal_spacing(self):
        x = [10.0, 20.0, 30.0, 40.0]
        report = agreement_report(x, list(reversed(x)))
        assert report.spearman_rho == pytest.approx(-1.0, abs=1e-12)

    def test_constant_shift(self):
        human = [40.0, 55.0, 62.0, 30.0, 71.0]
        shifted = [h + 5 for h in human]
        report = agreement_report(shifted, human)
        assert report.spearman_rho == pytest.approx(1.0, abs=1e-12)
        assert report.pearson_r == pytest.approx(1.0, abs=1e-12)
        assert report.mae == pytest.approx(5.0)


def _vector(values: dict[Factor, float]) -> ScoreVector:
    return ScoreVector.from_scores({f: float(values.get(f, 5.0)) for f in ALL_FACTORS})


class TestFactorAgreement:
    def _ai_and_human(self, n=5, shift_factor=None, shift=0.0, seed=1):
        rng = np.random.default_rng(seed)
        grid = [0, 1, 2, 4, 5, 6, 8, 9, 10]
        ai, human = [], []
        for i in range(n):
            symbols = tuple(
                ["A+", "A", "A-", "B+", "B", "B-", "C+", "C"][int(v) % 8]
                for v in rng.integers(0, 8, size=8)
            )
            item = make_assessed(f"p{i}", symbols, outcome=i % 2)
            ai.append(item)
            scores = {
                f: float(rng.choice(grid)) for f in ALL_FACTORS
            }
            human.append((f"p{i}", _vector(scores)))
        if shift_factor is not None:
            human = [
                (
                    pid,
                    _vector(
                        {
                            f: vec.scores[f] - (shift if f is shift_factor else 0.0)
                            for f in ALL_FACTORS
                        }
                    ),
                )
                for pid, vec in human
            ]
        return ai, human

    def test_identical_scores_all_zero_differences(self):
        ai, _ = self._ai_and_human()
        human = [(a.pitch.pitch_id, a.scores) for a in ai]
        rows = factor_agreement(ai, human)
        assert all(row.mean_difference == 0.0 for row in rows)

    def test_constant_factor_flags_undefined_r(self):
        ai = [make_assessed(f"p{i}", "B", outcome=i % 2) for i in range(4)]
        human = [(a.pitch.pitch_id, a.scores) for a in ai]
        rows = factor_agreement(ai, human)
        assert all(row.pearson_r is None for row in rows)

    def test_shifted_factor_tops_sorted_report(self):
        ai, human = self._ai_and_human(shift_factor=Factor.SUPPLY_CHAIN, shift=2.0)
        # Make the AI scores equal to human + 2 on f5 only, exactly.
        human = [
            (pid, _vector({f: ai[i].scores.scores[f] - (2.0 if f is Factor.SUPPLY_CHAIN else 0.0)
                           for f in ALL_FACTORS}))
            for i, (pid, _) in enumerate(human)
        ]
        rows = factor_agreement(ai, human)
        assert rows[0].factor is Factor.SUPPLY_CHAIN
        assert rows[0].mean_difference == pytest.approx(2.0)

    def test_misaligned_sets_rejected(self):
        ai, human = self._ai_and_human()
        with pytest.raises(MisalignedSets):
            factor_agreement(ai, human[:-1])

    def test_31_pitch_fixture_matches_brute_force(self):
        ai, human = self._ai_and_human(n=31, seed=13)
        rows = factor_agreement(ai, human)
        human_map = dict(human)
        order = [a.pitch.pitch_id for a in ai]
        for row in rows:
            diffs = [
                ai[i].scores.scores[row.factor] - human_map[pid].scores[row.factor]
                for i, pid in enumerate(order)
            ]
            assert row.mean_difference == pytest.approx(sum(diffs) / len(diffs), abs=1e-12)
            a_vals = [ai[i].scores.scores[row.factor] for i in range(31)]
            h_vals = [human_map[pid].scores[row.factor] for pid in order]
            assert row.pearson_r == pytest.approx(oracle_pearson(a_vals, h_vals), abs=1e-9)
        # Sorted by absolute mean difference, descending.
        magnitudes = [abs(r.mean_difference) for r in rows]
        assert magnitudes == sorted(magnitudes, reverse=True)


class TestOracleEquivalence:
    """Package metrics vs the definitional oracles on random instances."""

    def test_hundred_random_instances(self):
        rng = np.random.default_rng(99)
        for trial in range(100):
            n = int(rng.integers(4, 32))
            actual = list(rng.integers(0, 2, size=n))
            if sum(actual) == 0:
                actual[0] = 1
            if sum(actual) == n:
                actual[0] = 0
            predicted = list(rng.integers(0, 2, size=n))
            scores = list(np.round(rng.random(n), 2))  # induce score ties

            cm = confusion(predicted, actual)
            assert (cm.tp, cm.fp, cm.fn, cm.tn) == oracle_confusion(predicted, actual)
            report = binary_metrics(cm)
            expected = oracle_metrics(cm.tp, cm.fp, cm.fn, cm.tn)
            for name, value in expected.items():
                assert abs(getattr(report, name) - value) <= 1e-9, name

            assert abs(roc_auc(scores, actual) - oracle_roc_auc(scores, actual)) <= 1e-9

            x = list(rng.normal(size=n))
            y = list(rng.normal(size=n))
            r, _ = pearson(x, y)
            assert abs(r - oracle_pearson(x, y)) <= 1e-9
            rho, _ = spearman(x, y)
            assert abs(rho - oracle_spearman(x, y)) <= 1e-9
            assert abs(mean_absolute_error(x, y) - oracle_mae(x, y)) <= 1e-9

    def test_spearman_oracle_handles_ties(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(4, 20))
            x = list(rng.integers(0, 5, size=n).astype(float))
            y = list(rng.integers(0, 5, size=n).astype(float))
            if len(set(x)) < 2 or len(set(y)) < 2:
                continue
            rho, _ = spearman(x, y)
            assert abs(rho - oracle_spearman(x, y)) <= 1e-9
