import json
import shutil

import pytest

from conftest import REPO_ROOT, make_assessed

from pitchgate.classifiers import ModelConfig, train
from pitchgate.cli import main as cli_main
from pitchgate.features import FeatureSpec, assemble
from pitchgate.grader import StubBackend
from pitchgate.pipeline import (
    ConfigError,
    Runner,
    load_config,
    paired_baseline_comparison,
    run_experiment,
)


def _copy_config(tmp_path, mutate=None, name="config.json"):
    raw = json.loads((REPO_ROOT / "configs" / "synthetic.json").read_text())
    data_dir = REPO_ROOT / "data" / "synthetic"
    raw["corpus"]["dataset"] = str(data_dir / "dataset.csv")
    raw["corpus"]["transcript_dir"] = str(data_dir / "transcripts")
    raw["corpus"]["human_grades"] = str(data_dir / "human_grades.csv")
    if mutate:
        mutate(raw)
    path = tmp_path / name
    path.write_text(json.dumps(raw))
    return path


class TestConfigValidation:
    def test_unknown_algorithm_token_fails_before_stages(self, tmp_path):
        path = _copy_config(
            tmp_path, lambda raw: raw["models"]["grid"].append("quantum_svm")
        )
        with pytest.raises(ConfigError, match="quantum_svm"):
            load_config(path)

    def test_bad_holdout_fraction(self, tmp_path):
        path = _copy_config(
            tmp_path, lambda raw: raw["holdout"].__setitem__("fraction", 1.5)
        )
        with pytest.raises(ConfigError, match="fraction"):
            load_config(path)

    def test_unknown_feature_token(self, tmp_path):
        path = _copy_config(
            tmp_path, lambda raw: raw["features"].__setitem__("specs", ["f1,banana"])
        )
        with pytest.raises(ConfigError):
            load_config(path)

    def test_unknown_objective_fails_fast(self, tmp_path):
        path = _copy_config(
            tmp_path, lambda raw: raw["models"].__setitem__("objective", "vibes")
        )
        with pytest.raises(ConfigError, match="objective"):
            load_config(path)

    def test_unknown_subset_family_fails_fast(self, tmp_path):
        def mutate(raw):
            raw["features"] = {"subsets": "some"}

        with pytest.raises(ConfigError, match="subsets"):
            load_config(_copy_config(tmp_path, mutate))

    def test_digest_changes_iff_semantics_change(self, tmp_path):
        same_a = load_config(_copy_config(tmp_path, name="a.json"))
        same_b = load_config(_copy_config(tmp_path, name="b.json"))
        changed = load_config(
            _copy_config(
                tmp_path, lambda raw: raw["cv"].__setitem__("k", 4), name="c.json"
            )
        )
        assert same_a.digest() == same_b.digest()
        assert changed.digest() != same_a.digest()


class TestRunExperiment:
    def test_all_stages_complete_and_rerun_hits_cache(self, tmp_path):
        config = _copy_config(tmp_path)
        out = tmp_path / "out"
        manifest = run_experiment(config, out)
        assert [s.status for s in manifest.stages] == ["ran"] * 6
        for artifact in (
            "corpus.json",
            "assessed.jsonl",
            "model.json",
            "evaluation.json",
            "baseline.json",
            "report.json",
            "report.txt",
            "manifest.json",
        ):
            assert (out / artifact).exists(), artifact

        rerun = run_experiment(config, out)
        assert [s.status for s in rerun.stages] == ["cached"] * 6

    def test_reports_byte_identical_across_fresh_runs(self, tmp_path):
        config = _copy_config(tmp_path)
        run_experiment(config, tmp_path / "one")
        run_experiment(config, tmp_path / "two")
        assert (tmp_path / "one" / "report.json").read_bytes() == (
            tmp_path / "two" / "report.json"
        ).read_bytes()

    def test_input_change_invalidates_cache(self, tmp_path):
        data_dir = tmp_path / "data"
        shutil.copytree(REPO_ROOT / "data" / "synthetic", data_dir)

        def localize(raw):
            raw["corpus"]["dataset"] = str(data_dir / "dataset.csv")
            raw["corpus"]["transcript_dir"] = str(data_dir / "transcripts")

        config = _copy_config(tmp_path, localize)
        out = tmp_path / "out"
        run_experiment(config, out)
        srt = data_dir / "transcripts" / "pitch001.srt"
        srt.write_text(srt.read_text() + "\n5\n00:09:00,000 --> 00:09:04,000\nNew line.\n")
        manifest = run_experiment(config, out)
        statuses = {s.name: s.status for s in manifest.stages}
        assert statuses["ingest"] == "ran"
        assert statuses["grade"] == "ran"

    def test_seed_override_changes_outputs(self, tmp_path):
        config = _copy_config(tmp_path)
        run_experiment(config, tmp_path / "a", seed_override=1)
        run_experiment(config, tmp_path / "b", seed_override=2)
        assert (tmp_path / "a" / "report.json").read_bytes() != (
            tmp_path / "b" / "report.json"
        ).read_bytes()


class TestCliExitCodes:
    def test_success(self, tmp_path):
        config = _copy_config(tmp_path)
        assert cli_main(["--config", str(config), "--out", str(tmp_path / "o"), "run"]) == 0

    def test_config_error_is_exit_2(self, tmp_path):
        config = _copy_config(
            tmp_path, lambda raw: raw["models"]["grid"].append("quantum_svm")
        )
        assert cli_main(["--config", str(config), "--out", str(tmp_path / "o"), "run"]) == 2

    def test_stage_failure_is_exit_3(self, tmp_path):
        config = _copy_config(
            tmp_path,
            lambda raw: raw["corpus"].__setitem__("dataset", str(tmp_path / "missing.csv")),
        )
        assert cli_main(["--config", str(config), "--out", str(tmp_path / "o"), "run"]) == 3

    def test_single_stage_command(self, tmp_path):
        config = _copy_config(tmp_path)
        assert cli_main(["--config", str(config), "--out", str(tmp_path / "o"), "ingest"]) == 0
        assert (tmp_path / "o" / "corpus.json").exists()


def _tiny_model_and_assessed(n=31):
    symbols_pool = [
        ("A", "B+", "A-", "B", "C+", "B-", "A", "B"),
        ("C", "C-", "B-", "C+", "C", "B", "C-", "C"),
        ("B", "A", "B+", "A-", "B", "B+", "A", "A-"),
    ]
    assessed = [
        make_assessed(
            f"p{i:02d}",
            symbols_pool[i % 3],
            outcome=1 if i % 3 != 1 else 0,
            ask_amount=50_000 + 1000 * i,
            ask_equity=5.0 + (i % 10),
        )
        for i in range(n)
    ]
    spec = FeatureSpec.from_text("f1,f3,f8,total,ask")
    X, y = assemble(assessed, spec)
    from pitchgate.classifiers import TrainingSet

    model = train(ModelConfig.make("gaussian_nb"), TrainingSet(X=X, y=y))
    return model, spec, assessed


class TestPairedBaseline:
    def test_reports_cover_identical_pitch_ids(self):
        model, spec, assessed = _tiny_model_and_assessed()
        doc = paired_baseline_comparison(
            [a.pitch for a in assessed], assessed, model, spec, StubBackend(seed=3)
        )
        assert len(doc["pitch_ids"]) == 31
        assert set(doc["pitch_ids"]) == {v["pitch_id"] for v in doc["verdicts"]}
        assert doc["excluded"] == []
        assert doc["cfa"]["confusion"]["tp"] + doc["cfa"]["confusion"]["fp"] + doc[
            "cfa"
        ]["confusion"]["fn"] + doc["cfa"]["confusion"]["tn"] == 31
        assert doc["baseline"]["confusion"]["tp"] + doc["baseline"]["confusion"][
            "fp"
        ] + doc["baseline"]["confusion"]["fn"] + doc["baseline"]["confusion"]["tn"] == 31

    def test_pitch_without_verdict_excluded_from_both_sides(self):
        model, spec, assessed = _tiny_model_and_assessed(n=8)

        class Indecisive(StubBackend):
            def complete(self, prompt):
                if assessed[2].pitch.transcript in prompt and "Attached" in prompt:
                    return "A thoughtful evaluation with no final verdict."
                return super().complete(prompt)

        doc = paired_baseline_comparison(
            [a.pitch for a in assessed], assessed, model, spec, Indecisive(seed=3)
        )
        assert doc["excluded"] == [assessed[2].pitch.pitch_id]
        assert len(doc["pitch_ids"]) == 7
        total = sum(doc["baseline"]["confusion"].values())
        assert total == 7
