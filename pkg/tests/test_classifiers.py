import json
import math

import numpy as np
import pytest

from conftest import separable_fixture, training_set

from pitchgate.classifiers import (
    ColumnMismatch,
    EmptyEnsemble,
    InvalidHyperparameter,
    ModelConfig,
    SingleClassTraining,
    UnknownAlgorithm,
    WeightMismatch,
    decide,
    model_from_dict,
    model_to_dict,
    predict_proba,
    soft_vote,
    train,
)
from pitchgate.classifiers import _kernels

ALL_FIVE = (
    "gaussian_nb",
    "logistic_regression",
    "decision_tree",
    "random_forest",
    "gradient_boosting",
)


class TestModelConfig:
    def test_unknown_algorithm_rejected(self):
        with pytest.raises(UnknownAlgorithm, match="svm"):
            ModelConfig(algorithm="svm")

    def test_unknown_hyperparameter_rejected(self):
        with pytest.raises(InvalidHyperparameter):
            ModelConfig.make("gaussian_nb", depth=3)

    def test_defaults_merged(self):
        hp = ModelConfig.make("random_forest", n_trees=10).hyperparameters()
        assert hp["n_trees"] == 10
        assert hp["bootstrap"] is True
        assert hp["max_depth"] == 6

    def test_soft_vote_requires_members(self):
        with pytest.raises(EmptyEnsemble):
            ModelConfig(algorithm="soft_vote")

    def test_soft_vote_weight_validation(self):
        members = (ModelConfig.make("gaussian_nb"),)
        with pytest.raises(WeightMismatch):
            ModelConfig(algorithm="soft_vote", members=members, weights=(0.5, 0.5))
        with pytest.raises(WeightMismatch):
            ModelConfig(algorithm="soft_vote", members=members, weights=(0.0,))

    def test_text_form_round_trip(self):
        config = ModelConfig.from_text("decision_tree max_depth=6 min_samples_leaf=1")
        assert config.hyperparameters()["max_depth"] == 6
        assert "decision_tree" in config.to_text()
        vote = ModelConfig.from_text("soft_vote members=gaussian_nb+logistic_regression")
        assert [m.algorithm for m in vote.members] == [
            "gaussian_nb",
            "logistic_regression",
        ]

    def test_unlimited_depth_via_none(self):
        config = ModelConfig.from_text("decision_tree max_depth=none")
        assert config.hyperparameters()["max_depth"] is None


class TestGaussianNB:
    def test_hand_computed_posterior_on_1d_classes(self):
        # Class 0 at {-1.0, -1.2, -0.8}, class 1 at {1.0, 1.2, 0.8}.
        X = np.array([[-1.0], [-1.2], [-0.8], [1.0], [1.2], [0.8]])
        y = np.array([0, 0, 0, 1, 1, 1])
        model = train(ModelConfig.make("gaussian_nb"), training_set(X, y))

        floor = 1e-9
        mean0, mean1 = -1.0, 1.0
        var = np.mean((X[:3, 0] - mean0) ** 2) + floor

        def log_gauss(x, mu):
            return -0.5 * (math.log(2 * math.pi * var) + (x - mu) ** 2 / var)

        for x in (-1.0, 1.0, 0.3):
            l0 = math.log(0.5) + log_gauss(x, mean0)
            l1 = math.log(0.5) + log_gauss(x, mean1)
            expected = math.exp(l1) / (math.exp(l0) + math.exp(l1))
            assert model.predict_proba(np.array([x])) == pytest.approx(expected, abs=1e-9)
        assert model.predict_proba(np.array([-1.0])) < 0.5
        assert model.predict_proba(np.array([1.0])) > 0.5

    def test_symmetric_midpoint_is_half(self):
        X = np.array([[-1.0], [-1.2], [-0.8], [1.0], [1.2], [0.8]])
        y = np.array([0, 0, 0, 1, 1, 1])
        model = train(ModelConfig.make("gaussian_nb"), training_set(X, y))
        assert abs(model.predict_proba(np.array([0.0])) - 0.5) <= 1e-9

    def test_row_permutation_leaves_parameters_bit_identical(self):
        rng = np.random.default_rng(11)
        X = rng.normal(size=(40, 3))
        y = (rng.random(40) > 0.4).astype(int)
        y[:2] = [0, 1]
        base = train(ModelConfig.make("gaussian_nb"), training_set(X, y))
        perm = rng.permutation(40)
        shuffled = train(ModelConfig.make("gaussian_nb"), training_set(X[perm], y[perm]))
        np.testing.assert_array_equal(base.means, shuffled.means)
        np.testing.assert_array_equal(base.variances, shuffled.variances)
        np.testing.assert_array_equal(base.log_priors, shuffled.log_priors)

    def test_single_class_rejected(self):
        X = np.zeros((4, 1))
        with pytest.raises(SingleClassTraining):
            train(ModelConfig.make("gaussian_nb"), training_set(X, np.ones(4, dtype=int)))


def _train_accuracy(model, data) -> float:
    probas = model.predict_proba_matrix(data.X.values)
    predicted = (probas > 0.5).astype(int)
    return float(np.mean(predicted == data.y.labels))


class TestLogisticRegression:
    def test_separable_fixture_reaches_095(self):
        data = separable_fixture()
        model = train(ModelConfig.make("logistic_regression"), data)
        assert _train_accuracy(model, data) >= 0.95

    def test_loss_trace_non_increasing(self):
        data = separable_fixture(seed=8)
        model = train(ModelConfig.make("logistic_regression"), data)
        trace = model.loss_trace
        assert len(trace) == 501
        assert all(b <= a + 1e-15 for a, b in zip(trace, trace[1:]))

    def test_constant_column_standardized_to_zero_weighting(self):
        rng = np.random.default_rng(3)
        X = rng.normal(size=(50, 2))
        X[:, 1] = 7.0  # constant
        y = (X[:, 0] > 0).astype(int)
        model = train(ModelConfig.make("logistic_regression"), training_set(X, y))
        # Standardization maps the constant column to zeros, so its weight
        # never receives gradient from the data term.
        assert model.weights[1] == pytest.approx(0.0, abs=1e-12)


class TestDecisionTree:
    def test_unlimited_depth_memorizes_conflict_free_data(self):
        rng = np.random.default_rng(4)
        X = rng.normal(size=(60, 3))
        y = (rng.random(60) > 0.5).astype(int)
        y[:2] = [0, 1]
        config = ModelConfig.make("decision_tree", max_depth=None, min_samples_leaf=1)
        model = train(config, training_set(X, y))
        assert _train_accuracy(model, training_set(X, y)) == 1.0

    def test_depth_limit_respected_on_xor(self):
        from conftest import xor_fixture

        data = xor_fixture()
        stump = train(ModelConfig.make("decision_tree", max_depth=1), data)
        deep = train(
            ModelConfig.make("decision_tree", max_depth=4, min_samples_leaf=1), data
        )
        assert _train_accuracy(stump, data) < 0.75
        assert _train_accuracy(deep, data) == 1.0

    def test_conflicting_duplicates_do_not_crash(self):
        X = np.array([[1.0], [1.0], [2.0]])
        y = np.array([0, 1, 1])
        config = ModelConfig.make("decision_tree", max_depth=None, min_samples_leaf=1)
        model = train(config, training_set(X, y))
        p = model.predict_proba(np.array([1.0]))
        assert 0.0 <= p <= 1.0


class TestRandomForest:
    def test_single_tree_no_bootstrap_equals_decision_tree(self):
        rng = np.random.default_rng(6)
        X = rng.normal(size=(80, 4))
        y = (X[:, 0] - X[:, 2] > 0).astype(int)
        data = training_set(X, y)
        forest = train(
            ModelConfig.make(
                "random_forest",
                seed=13,
                n_trees=1,
                bootstrap=False,
                feature_subsample=False,
                max_depth=4,
                min_samples_leaf=2,
            ),
            data,
        )
        tree = train(
            ModelConfig.make("decision_tree", seed=13, max_depth=4, min_samples_leaf=2),
            data,
        )
        probe = rng.normal(size=(50, 4))
        np.testing.assert_array_equal(
            forest.predict_proba_matrix(probe), tree.predict_proba_matrix(probe)
        )

    def test_forest_beats_chance_on_separable(self):
        data = separable_fixture(seed=10)
        model = train(ModelConfig.make("random_forest", n_trees=40, seed=1), data)
        assert _train_accuracy(model, data) >= 0.95


class TestGradientBoosting:
    def test_zero_stages_predicts_prior(self):
        X = np.arange(10, dtype=float)[:, None]
        y = np.array([1, 1, 1, 1, 1, 1, 0, 0, 0, 0])
        model = train(ModelConfig.make("gradient_boosting", stages=0), training_set(X, y))
        assert model.predict_proba(np.array([3.0])) == pytest.approx(0.6, abs=1e-12)

    def test_loss_trace_non_increasing_per_stage(self):
        data = separable_fixture(seed=12)
        model = train(ModelConfig.make("gradient_boosting"), data)
        trace = model.loss_trace
        assert len(trace) == 101
        assert all(b <= a for a, b in zip(trace, trace[1:]))

    def test_learns_separable_data(self):
        data = separable_fixture(seed=14)
        model = train(ModelConfig.make("gradient_boosting"), data)
        assert _train_accuracy(model, data) >= 0.95


class FixedModel:
    """Predicts one constant probability; stands in for a trained member."""

    algorithm = "fixed"

    def __init__(self, p, columns=("x",)):
        self.p = p
        self.columns = list(columns)

    def predict_proba(self, row):
        return self.p

    def predict_proba_matrix(self, X):
        return np.full(np.asarray(X).shape[0], self.p)


class TestSoftVote:
    def test_uniform_mean(self):
        members = [FixedModel(p) for p in (0.6, 0.8, 0.4, 0.7)]
        result = soft_vote(members, None, np.array([0.0]))
        assert abs(result - 0.625) <= 1e-12

    def test_single_member_identity(self):
        assert soft_vote([FixedModel(0.37)], None, np.array([0.0])) == 0.37

    def test_degenerate_weights_select_first(self):
        members = [FixedModel(p) for p in (0.6, 0.8, 0.4, 0.7)]
        assert soft_vote(members, [1, 0, 0, 0], np.array([0.0])) == 0.6

    def test_weighted_mean_within_member_range(self):
        rng = np.random.default_rng(0)
        for _ in range(25):
            ps = rng.random(4)
            ws = rng.random(4) + 0.01
            value = soft_vote([FixedModel(p) for p in ps], list(ws), np.array([0.0]))
            assert min(ps) - 1e-12 <= value <= max(ps) + 1e-12

    def test_errors(self):
        with pytest.raises(EmptyEnsemble):
            soft_vote([], None, np.array([0.0]))
        with pytest.raises(WeightMismatch):
            soft_vote([FixedModel(0.5)], [1, 2], np.array([0.0]))
        with pytest.raises(WeightMismatch):
            soft_vote([FixedModel(0.5)], [0.0], np.array([0.0]))

    def test_trained_ensemble_matches_member_mean(self):
        data = separable_fixture(seed=21)
        config = ModelConfig.make(
            "soft_vote",
            members=(
                ModelConfig.make("gaussian_nb"),
                ModelConfig.make("logistic_regression"),
                ModelConfig.make("random_forest", n_trees=15, seed=2),
                ModelConfig.make("gradient_boosting", stages=25),
            ),
        )
        model = train(config, data)
        row = data.X.values[0]
        expected = np.mean([m.predict_proba(row) for m in model.members])
        assert abs(model.predict_proba(row) - expected) <= 1e-12


class TestDecide:
    def test_paper_boundary_cases(self):
        assert decide(0.505) == 1
        assert decide(0.5) == 0  # strict inequality at the threshold
        assert decide(0.171) == 0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            decide(1.5)


def _probe_grid(d, seed=123):
    return np.random.default_rng(seed).normal(size=(40, d))


def _config_for(algorithm):
    if algorithm == "random_forest":
        return ModelConfig.make(algorithm, n_trees=20, seed=5)
    if algorithm == "gradient_boosting":
        return ModelConfig.make(algorithm, stages=30, seed=5)
    return ModelConfig.make(algorithm, seed=5)


class TestDeterminismAndSerialization:
    @pytest.mark.parametrize("algorithm", ALL_FIVE)
    def test_training_bit_deterministic(self, algorithm):
        data = separable_fixture(seed=33)
        probe = _probe_grid(2)
        a = train(_config_for(algorithm), data)
        b = train(_config_for(algorithm), data)
        np.testing.assert_array_equal(
            a.predict_proba_matrix(probe), b.predict_proba_matrix(probe)
        )

    @pytest.mark.parametrize("algorithm", ALL_FIVE + ("soft_vote",))
    def test_json_round_trip_restores_bit_identical_predictions(self, algorithm):
        data = separable_fixture(seed=34)
        if algorithm == "soft_vote":
            config = ModelConfig.make(
                "soft_vote",
                members=(
                    ModelConfig.make("gaussian_nb"),
                    ModelConfig.make("decision_tree"),
                ),
            )
        else:
            config = _config_for(algorithm)
        model = train(config, data)
        payload = json.loads(json.dumps(model_to_dict(model)))
        restored = model_from_dict(payload)
        probe = _probe_grid(2, seed=55)
        np.testing.assert_array_equal(
            model.predict_proba_matrix(probe), restored.predict_proba_matrix(probe)
        )

    def test_probabilities_always_in_unit_interval(self):
        data = separable_fixture(seed=35)
        probe = _probe_grid(2, seed=77) * 10
        for algorithm in ALL_FIVE:
            model = train(_config_for(algorithm), data)
            probas = model.predict_proba_matrix(probe)
            assert np.all(probas >= 0.0) and np.all(probas <= 1.0)

    def test_column_mismatch_rejected(self):
        data = separable_fixture(seed=36)
        model = train(ModelConfig.make("gaussian_nb"), data)
        with pytest.raises(ColumnMismatch):
            predict_proba(model, np.array([1.0, 2.0, 3.0]))


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba unavailable")
class TestKernelParity:
    def test_split_kernels_agree_across_paths(self):
        rng = np.random.default_rng(42)
        for _ in range(20):
            X = rng.normal(size=(40, 5))
            y = (rng.random(40) > 0.5).astype(np.int64)
            y[:2] = [0, 1]
            feats = np.arange(5, dtype=np.int64)
            nb = _kernels._best_split_gini_nb(X, y, feats, 2)
            py = _kernels._best_split_gini_py(X, y, feats, 2)
            assert nb[0] == py[0]
            assert nb[1] == pytest.approx(py[1], abs=0)
            assert nb[2] == pytest.approx(py[2], rel=1e-12)

            r = rng.normal(size=40)
            nb = _kernels._best_split_sse_nb(X, r, feats, 2)
            py = _kernels._best_split_sse_py(X, r, feats, 2)
            assert nb[0] == py[0]
            assert nb[1] == pytest.approx(py[1], abs=0)
            assert nb[2] == pytest.approx(py[2], rel=1e-9)

    def test_apply_kernels_agree_across_paths(self):
        from pitchgate.classifiers.tree import build_tree

        rng = np.random.default_rng(43)
        X = rng.normal(size=(60, 3))
        y = (X[:, 0] > 0).astype(np.int64)
        tree = build_tree(X, y, criterion="gini", max_depth=5, min_samples_leaf=1)
        probe = rng.normal(size=(100, 3))
        nb = _kernels._apply_tree_nb(tree.feature, tree.threshold, tree.left,
                                     tree.right, probe)
        py = _kernels._apply_tree_py(tree.feature, tree.threshold, tree.left,
                                     tree.right, probe)
        np.testing.assert_array_equal(nb, py)
