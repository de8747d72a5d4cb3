"""Staged experiment pipeline: ingest -> grade -> train -> evaluate ->
report, plus the unprompted-baseline comparison.

Stages are cached by a content digest of their inputs and config section;
a re-run with matching digests skips the stage. All randomness flows from
one root seed, fanned out by stage name, so stub-backed runs are
byte-reproducible.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus as corpus_mod
from .classifiers import (
    ClassifierError,
    ModelConfig,
    TrainingSet,
    decide,
    model_from_dict,
    model_to_dict,
    train,
)
from .evaluation import (
    OBJECTIVES,
    agreement_report,
    binary_metrics,
    confusion,
    factor_agreement,
    grid_search,
    misclassification_report,
    permutation_importance,
    render_agreement,
    render_confusion,
    render_factor_agreement,
    render_importance,
    render_metric_table,
    render_misclassifications,
    stratified_kfold,
)
from .features import FeatureSpec, SpecEnumeration, assemble, enumerate_feature_specs, undersample
from .grader import (
    DecisionNotFound,
    PROMPT_VERSION,
    RemoteBackend,
    StubBackend,
    baseline_evaluate,
    consensus,
    grade_many,
    load_assessed,
    load_human_grades,
    save_assessed,
)
from .util import canonical_json, derive_seed, sha256_file, sha256_text


class ConfigError(Exception):
    pass


class StageError(Exception):
    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {type(cause).__name__}: {cause}")


@dataclass
class ExperimentConfig:
    seed: int
    dataset: Path
    transcript_dir: Path
    human_grades: Path | None
    backend_kind: str
    model_name: str
    temperature: float
    retries: int
    parallelism: int
    timeout: float
    feature_specs: list[FeatureSpec] | None
    enumeration: SpecEnumeration | None
    model_grid: list[ModelConfig]
    objective: str
    cv_k: int
    holdout_fraction: float
    baseline_enabled: bool
    baseline_max_pitches: int | None
    importance_repeats: int
    leaderboard_top_n: int
    raw: dict

    def digest(self) -> str:
        return sha256_text(canonical_json(self.raw) + f"|seed={self.seed}")


def _require(section: dict, key: str, where: str):
    if key not in section:
        raise ConfigError(f"missing required config key {where}.{key}")
    return section[key]


def _parse_model_entry(entry, index: int, root_seed: int) -> ModelConfig:
    seed = derive_seed(root_seed, "model", index)
    try:
        if isinstance(entry, str):
            return ModelConfig.from_text(entry, seed=seed)
        if isinstance(entry, dict):
            payload = dict(entry)
            payload.setdefault("seed", seed)
            return ModelConfig.from_json_dict(payload)
    except ClassifierError as exc:
        raise ConfigError(f"models.grid[{index}]: {exc}") from exc
    raise ConfigError(f"models.grid[{index}] must be a string or object")


def load_config(config_path: str | Path, seed_override: int | None = None) -> ExperimentConfig:
    """Parse and validate the experiment config; fails before any stage runs."""
    config_path = Path(config_path)
    try:
        raw = json.loads(config_path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {config_path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc

    base = config_path.parent
    seed = int(raw.get("seed", 0)) if seed_override is None else int(seed_override)

    corpus_cfg = _require(raw, "corpus", "")
    dataset = base / _require(corpus_cfg, "dataset", "corpus")
    transcript_dir = base / _require(corpus_cfg, "transcript_dir", "corpus")
    human = corpus_cfg.get("human_grades")
    human_grades = (base / human) if human else None

    grader_cfg = raw.get("grader", {})
    backend_kind = grader_cfg.get("backend", "stub")
    if backend_kind not in ("stub", "remote"):
        raise ConfigError(f"grader.backend must be 'stub' or 'remote', got {backend_kind!r}")

    features_cfg = raw.get("features", {})
    feature_specs: list[FeatureSpec] | None = None
    enumeration: SpecEnumeration | None = None
    if "specs" in features_cfg:
        try:
            feature_specs = [FeatureSpec.from_text(s) for s in features_cfg["specs"]]
        except ValueError as exc:
            raise ConfigError(f"features.specs: {exc}") from exc
        if not feature_specs:
            raise ConfigError("features.specs must not be empty")
    else:
        subsets = features_cfg.get("subsets", "all")
        if subsets not in ("all", "min_size"):
            raise ConfigError(
                f"features.subsets must be 'all' or 'min_size', got {subsets!r}"
            )
        ask_mode = features_cfg.get("ask", "joint")
        if ask_mode == "joint":
            ask_choices = ((False, False), (True, True))
        elif ask_mode == "separate":
            ask_choices = ((False, False), (True, False), (False, True), (True, True))
        else:
            raise ConfigError(f"features.ask must be 'joint' or 'separate', got {ask_mode!r}")
        enumeration = SpecEnumeration(
            subsets=subsets,
            min_size=int(features_cfg.get("min_size", 1)),
            total_choices=(False, True),
            ask_choices=ask_choices,
        )

    models_cfg = raw.get("models", {})
    grid_raw = models_cfg.get("grid", ["gaussian_nb", "logistic_regression"])
    model_grid = [_parse_model_entry(e, i, seed) for i, e in enumerate(grid_raw)]
    objective = models_cfg.get("objective", "accuracy")
    if objective not in OBJECTIVES:
        raise ConfigError(
            f"models.objective must be one of {OBJECTIVES}, got {objective!r}"
        )

    cv_cfg = raw.get("cv", {})
    holdout_cfg = raw.get("holdout", {})
    fraction = float(holdout_cfg.get("fraction", 0.2))
    if not 0.0 < fraction < 1.0:
        raise ConfigError(f"holdout.fraction must lie in (0,1), got {fraction}")

    baseline_cfg = raw.get("baseline", {})
    report_cfg = raw.get("report", {})

    return ExperimentConfig(
        seed=seed,
        dataset=dataset,
        transcript_dir=transcript_dir,
        human_grades=human_grades,
        backend_kind=backend_kind,
        model_name=grader_cfg.get("model", "gpt-4"),
        temperature=float(grader_cfg.get("temperature", 0.0)),
        retries=int(grader_cfg.get("retries", 2)),
        parallelism=int(grader_cfg.get("parallelism", 1)),
        timeout=float(grader_cfg.get("timeout", 60.0)),
        feature_specs=feature_specs,
        enumeration=enumeration,
        model_grid=model_grid,
        objective=objective,
        cv_k=int(cv_cfg.get("k", 5)),
        holdout_fraction=fraction,
        baseline_enabled=bool(baseline_cfg.get("enabled", False)),
        baseline_max_pitches=baseline_cfg.get("max_pitches"),
        importance_repeats=int(report_cfg.get("importance_repeats", 10)),
        leaderboard_top_n=int(report_cfg.get("top_n", 10)),
        raw=raw,
    )


def make_backend(config: ExperimentConfig):
    if config.backend_kind == "stub":
        return StubBackend(seed=derive_seed(config.seed, "grade"))
    return RemoteBackend(
        model=config.model_name,
        temperature=config.temperature,
        timeout=config.timeout,
    )


@dataclass
class StageRecord:
    name: str
    status: str  # "ran" | "cached"
    digest: str
    outputs: list[str]


@dataclass
class RunManifest:
    config_digest: str
    seed: int
    prompt_version: str
    out_dir: str
    stages: list[StageRecord] = field(default_factory=list)
    corpus_provenance: dict = field(default_factory=dict)
    created_at: str = ""

    def to_json_dict(self) -> dict:
        return {
            "config_digest": self.config_digest,
            "seed": self.seed,
            "prompt_version": self.prompt_version,
            "out_dir": self.out_dir,
            "stages": [
                {"name": s.name, "status": s.status, "digest": s.digest, "outputs": s.outputs}
                for s in self.stages
            ],
            "corpus_provenance": self.corpus_provenance,
            "created_at": self.created_at,
        }


class Runner:
    """Executes pipeline stages against one output directory."""

    def __init__(self, config: ExperimentConfig, out_dir: str | Path):
        self.config = config
        self.out = Path(out_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        (self.out / "digests").mkdir(exist_ok=True)
        self.manifest = RunManifest(
            config_digest=config.digest(),
            seed=config.seed,
            prompt_version=PROMPT_VERSION,
            out_dir=str(self.out),
        )

    # -- caching ------------------------------------------------------------

    def _digest_path(self, stage: str) -> Path:
        return self.out / "digests" / f"{stage}.digest"

    def _is_cached(self, stage: str, digest: str, outputs: list[Path]) -> bool:
        marker = self._digest_path(stage)
        if not marker.exists():
            return False
        if marker.read_text().strip() != digest:
            return False
        return all(p.exists() for p in outputs)

    def _record(self, stage: str, digest: str, outputs: list[Path], cached: bool) -> None:
        if not cached:
            self._digest_path(stage).write_text(digest)
        self.manifest.stages.append(
            StageRecord(
                name=stage,
                status="cached" if cached else "ran",
                digest=digest,
                outputs=[str(p) for p in outputs],
            )
        )

    def _stage_digest(self, stage: str, sections: dict, input_files: list[Path]) -> str:
        payload = {
            "stage": stage,
            "seed": self.config.seed,
            "config": sections,
            "inputs": {
                str(p): sha256_file(p) if p.exists() else "missing"
                for p in sorted(input_files)
            },
            "prompt_version": PROMPT_VERSION,
        }
        return sha256_text(canonical_json(payload))

    # -- stages ---------------------------------------------------------------

    def ingest(self) -> Path:
        cfg = self.config
        out_path = self.out / "corpus.json"
        srt_files = sorted(cfg.transcript_dir.glob("*.srt"))
        digest = self._stage_digest(
            "ingest",
            {"corpus": cfg.raw.get("corpus", {})},
            [cfg.dataset, *srt_files],
        )
        if self._is_cached("ingest", digest, [out_path]):
            self._record("ingest", digest, [out_path], cached=True)
            return out_path
        try:
            loaded = corpus_mod.load_corpus(cfg.dataset, cfg.transcript_dir)
        except Exception as exc:
            raise StageError("ingest", exc) from exc
        out_path.write_text(loaded.to_json(), encoding="utf-8")
        self.manifest.corpus_provenance = loaded.provenance
        self._record("ingest", digest, [out_path], cached=False)
        return out_path

    def _load_corpus(self) -> corpus_mod.PitchCorpus:
        return corpus_mod.PitchCorpus.from_json(
            (self.out / "corpus.json").read_text(encoding="utf-8")
        )

    def grade(self) -> Path:
        cfg = self.config
        out_path = self.out / "assessed.jsonl"
        digest = self._stage_digest(
            "grade", {"grader": cfg.raw.get("grader", {})}, [self.out / "corpus.json"]
        )
        if self._is_cached("grade", digest, [out_path]):
            self._record("grade", digest, [out_path], cached=True)
            return out_path
        try:
            pitches = self._load_corpus().records
            backend = make_backend(cfg)
            assessed = grade_many(
                backend, pitches, max_retries=cfg.retries, parallelism=cfg.parallelism
            )
            save_assessed(out_path, assessed)
        except StageError:
            raise
        except Exception as exc:
            raise StageError("grade", exc) from exc
        self._record("grade", digest, [out_path], cached=False)
        return out_path

    def train(self) -> Path:
        cfg = self.config
        model_path = self.out / "model.json"
        split_path = self.out / "split.json"
        digest = self._stage_digest(
            "train",
            {
                "features": cfg.raw.get("features", {}),
                "models": cfg.raw.get("models", {}),
                "cv": cfg.raw.get("cv", {}),
                "holdout": cfg.raw.get("holdout", {}),
            },
            [self.out / "assessed.jsonl", self.out / "corpus.json"],
        )
        if self._is_cached("train", digest, [model_path, split_path]):
            self._record("train", digest, [model_path, split_path], cached=True)
            return model_path
        try:
            full = self._load_corpus()
            assessed = load_assessed(self.out / "assessed.jsonl", full)
            train_corpus, test_corpus = corpus_mod.holdout_split(
                full, cfg.holdout_fraction, derive_seed(cfg.seed, "holdout")
            )
            split_path.write_text(
                json.dumps(
                    {"train_ids": train_corpus.ids(), "test_ids": test_corpus.ids()},
                    indent=2,
                ),
                encoding="utf-8",
            )
            train_ids = set(train_corpus.ids())
            assessed_train = [a for a in assessed if a.pitch.pitch_id in train_ids]

            specs = (
                cfg.feature_specs
                if cfg.feature_specs is not None
                else enumerate_feature_specs(cfg.enumeration)
            )
            labels = assemble(assessed_train, specs[0])[1]
            plan = stratified_kfold(labels, cfg.cv_k, derive_seed(cfg.seed, "cv"))

            leaderboard: list[dict] = []
            best = None  # (mean, spec, config)
            for spec in specs:
                X, y = assemble(assessed_train, spec)
                result = grid_search(
                    cfg.model_grid, TrainingSet(X=X, y=y), plan, cfg.objective
                )
                for res in result.results:
                    leaderboard.append(
                        {
                            "feature_spec": spec.to_text(),
                            "model": res.config.to_text(),
                            "mean_score": res.mean_score,
                            "error": res.error,
                        }
                    )
                winner = result.results[result.best_index]
                if best is None or (
                    winner.mean_score is not None and winner.mean_score > best[0]
                ):
                    best = (winner.mean_score, spec, result.best)
            assert best is not None
            _, best_spec, best_config = best

            X, y = assemble(assessed_train, best_spec)
            X_bal, y_bal = undersample(X, y, derive_seed(cfg.seed, "train-final"))
            final_model = train(best_config, TrainingSet(X=X_bal, y=y_bal))

            leaderboard.sort(
                key=lambda row: -(row["mean_score"] if row["mean_score"] is not None else -1.0)
            )
            model_doc = {
                "format_version": 1,
                "feature_spec": best_spec.to_text(),
                "columns": best_spec.columns(),
                "objective": cfg.objective,
                "cv_mean": best[0],
                "model": model_to_dict(final_model),
                "leaderboard": leaderboard[: cfg.leaderboard_top_n],
                "searched": {"feature_specs": len(specs), "model_configs": len(cfg.model_grid)},
            }
            model_path.write_text(json.dumps(model_doc, indent=2), encoding="utf-8")
        except StageError:
            raise
        except Exception as exc:
            raise StageError("train", exc) from exc
        self._record("train", digest, [model_path, split_path], cached=False)
        return model_path

    def _load_model(self) -> tuple[object, FeatureSpec, dict]:
        doc = json.loads((self.out / "model.json").read_text(encoding="utf-8"))
        return (
            model_from_dict(doc["model"]),
            FeatureSpec.from_text(doc["feature_spec"]),
            doc,
        )

    def evaluate(self) -> Path:
        cfg = self.config
        out_path = self.out / "evaluation.json"
        inputs = [self.out / "model.json", self.out / "split.json", self.out / "assessed.jsonl",
                  self.out / "corpus.json"]
        if cfg.human_grades:
            inputs.append(cfg.human_grades)
        digest = self._stage_digest(
            "evaluate", {"report": cfg.raw.get("report", {})}, inputs
        )
        if self._is_cached("evaluate", digest, [out_path]):
            self._record("evaluate", digest, [out_path], cached=True)
            return out_path
        try:
            full = self._load_corpus()
            assessed = load_assessed(self.out / "assessed.jsonl", full)
            split = json.loads((self.out / "split.json").read_text(encoding="utf-8"))
            test_ids = set(split["test_ids"])
            assessed_test = [a for a in assessed if a.pitch.pitch_id in test_ids]
            model, spec, _doc = self._load_model()

            X, y = assemble(assessed_test, spec)
            probas = model.predict_proba_matrix(X.values)
            predicted = [decide(float(p)) for p in probas]
            cm = confusion(predicted, list(y.labels))
            report = binary_metrics(cm, scores=list(probas), actual=list(y.labels))

            importance = permutation_importance(
                model,
                TrainingSet(X=X, y=y),
                objective=cfg.objective,
                repeats=cfg.importance_repeats,
                seed=derive_seed(cfg.seed, "importance"),
            )

            human_totals: dict[str, float] = {}
            agreement = None
            factors = None
            if cfg.human_grades:
                grade_sets = load_human_grades(cfg.human_grades)
                vectors = {pid: consensus(gs) for pid, gs in grade_sets.items()}
                human_totals = {pid: v.total for pid, v in vectors.items()}
                shared = [a for a in assessed if a.pitch.pitch_id in vectors]
                if len(shared) >= 3:
                    ai_totals = [a.scores.total for a in shared]
                    human_list = [human_totals[a.pitch.pitch_id] for a in shared]
                    agreement = agreement_report(ai_totals, human_list)
                    factors = factor_agreement(
                        shared, [(a.pitch.pitch_id, vectors[a.pitch.pitch_id]) for a in shared]
                    )

            misclassified = misclassification_report(
                model, assessed_test, spec, human_totals or None
            )

            doc = {
                "metrics": report.to_json_dict(),
                "importance": importance.to_json_dict(),
                "misclassified": [m.to_json_dict() for m in misclassified],
                "agreement": agreement.to_json_dict() if agreement else None,
                "factor_agreement": [f.to_json_dict() for f in factors] if factors else None,
                "feature_spec": spec.to_text(),
                "model_config": model.config.to_json_dict(),
                "n_test": len(assessed_test),
            }
            out_path.write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
        except StageError:
            raise
        except Exception as exc:
            raise StageError("evaluate", exc) from exc
        self._record("evaluate", digest, [out_path], cached=False)
        return out_path

    def compare_baseline(self) -> Path:
        cfg = self.config
        out_path = self.out / "baseline.json"
        digest = self._stage_digest(
            "baseline",
            {"grader": cfg.raw.get("grader", {}), "baseline": cfg.raw.get("baseline", {})},
            [self.out / "corpus.json", self.out / "model.json", self.out / "split.json"],
        )
        if self._is_cached("baseline", digest, [out_path]):
            self._record("baseline", digest, [out_path], cached=True)
            return out_path
        try:
            full = self._load_corpus()
            split = json.loads((self.out / "split.json").read_text(encoding="utf-8"))
            subset_ids = split["test_ids"]
            if cfg.baseline_max_pitches:
                subset_ids = subset_ids[: cfg.baseline_max_pitches]
            subset = full.subset(subset_ids)
            if not subset.records:
                raise ConfigError("baseline comparison requires a non-empty pitch subset")
            assessed = load_assessed(self.out / "assessed.jsonl", full)
            model, spec, _doc = self._load_model()
            doc = paired_baseline_comparison(
                subset.records, assessed, model, spec, make_backend(cfg)
            )
            out_path.write_text(json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8")
        except StageError:
            raise
        except Exception as exc:
            raise StageError("baseline", exc) from exc
        self._record("baseline", digest, [out_path], cached=False)
        return out_path

    def report(self) -> Path:
        json_path = self.out / "report.json"
        text_path = self.out / "report.txt"
        inputs = [self.out / "evaluation.json"]
        baseline_path = self.out / "baseline.json"
        if baseline_path.exists():
            inputs.append(baseline_path)
        digest = self._stage_digest("report", {"report": self.config.raw.get("report", {})}, inputs)
        if self._is_cached("report", digest, [json_path, text_path]):
            self._record("report", digest, [json_path, text_path], cached=True)
            return json_path
        try:
            evaluation = json.loads((self.out / "evaluation.json").read_text(encoding="utf-8"))
            baseline = (
                json.loads(baseline_path.read_text(encoding="utf-8"))
                if baseline_path.exists()
                else None
            )
            doc = {"evaluation": evaluation, "baseline": baseline}
            json_path.write_text(
                json.dumps(doc, indent=2, sort_keys=True), encoding="utf-8"
            )
            text_path.write_text(render_report_text(doc), encoding="utf-8")
        except StageError:
            raise
        except Exception as exc:
            raise StageError("report", exc) from exc
        self._record("report", digest, [json_path, text_path], cached=False)
        return json_path

    def finish(self) -> RunManifest:
        self.manifest.created_at = datetime.datetime.now(
            datetime.timezone.utc
        ).isoformat()
        (self.out / "manifest.json").write_text(
            json.dumps(self.manifest.to_json_dict(), indent=2), encoding="utf-8"
        )
        return self.manifest


def paired_baseline_comparison(
    subset_records: list,
    assessed: list,
    model,
    spec: FeatureSpec,
    backend,
) -> dict:
    """Unprompted verdicts vs pipeline predictions over the same pitches.

    Pitches whose baseline response carries no decision are excluded from
    both sides and listed under "excluded".
    """
    verdicts = {}
    excluded: list[str] = []
    for pitch in subset_records:
        try:
            verdicts[pitch.pitch_id] = baseline_evaluate(backend, pitch)
        except DecisionNotFound:
            excluded.append(pitch.pitch_id)
    included_ids = {p.pitch_id for p in subset_records if p.pitch_id in verdicts}
    if not included_ids:
        raise RuntimeError("no pitch produced a baseline verdict")

    assessed_included = [a for a in assessed if a.pitch.pitch_id in included_ids]
    X, y = assemble(assessed_included, spec)
    probas = model.predict_proba_matrix(X.values)
    cfa_pred = [decide(float(p)) for p in probas]
    actual = list(y.labels)
    base_pred = [verdicts[a.pitch.pitch_id].decision for a in assessed_included]

    cfa_cm = confusion(cfa_pred, actual)
    base_cm = confusion(base_pred, actual)
    return {
        "pitch_ids": [a.pitch.pitch_id for a in assessed_included],
        "excluded": excluded,
        "cfa": binary_metrics(cfa_cm, scores=list(probas), actual=actual).to_json_dict(),
        "baseline": binary_metrics(base_cm).to_json_dict(),
        "verdicts": [verdicts[a.pitch.pitch_id].to_json_dict() for a in assessed_included],
    }


def _metric_report_from_dict(payload: dict):
    from .evaluation.metrics import ConfusionMatrix, MetricReport

    cm = ConfusionMatrix(**payload["confusion"])
    return MetricReport(
        accuracy=payload["accuracy"],
        precision=payload["precision"],
        recall=payload["recall"],
        f1=payload["f1"],
        specificity=payload["specificity"],
        balanced=payload["balanced"],
        roc_auc=payload["roc_auc"],
        undefined=frozenset(payload["undefined"]),
        cm=cm,
    )


def render_report_text(doc: dict) -> str:
    """Human-readable rendering of the combined report document."""
    from .evaluation.correlation import CorrelationReport, FactorAgreement
    from .evaluation.metrics import ConfusionMatrix
    from .evaluation.reports import MisclassifiedPitch
    from .rubric import Factor

    evaluation = doc["evaluation"]
    sections: list[str] = []
    sections.append("Pitch outcome prediction report")
    sections.append(
        f"Winning feature combination: {evaluation['feature_spec']}\n"
        f"Winning model: {evaluation['model_config']['algorithm']}"
    )
    reports = {"holdout": _metric_report_from_dict(evaluation["metrics"])}
    if doc.get("baseline"):
        reports["unprompted"] = _metric_report_from_dict(doc["baseline"]["baseline"])
        reports["rubric-prompted"] = _metric_report_from_dict(doc["baseline"]["cfa"])
    sections.append(render_metric_table(reports))
    cm = ConfusionMatrix(**evaluation["metrics"]["confusion"])
    sections.append(render_confusion(cm, "Holdout confusion"))
    if doc.get("baseline"):
        sections.append(
            render_confusion(
                ConfusionMatrix(**doc["baseline"]["baseline"]["confusion"]),
                "Unprompted baseline confusion",
            )
        )
        sections.append(
            render_confusion(
                ConfusionMatrix(**doc["baseline"]["cfa"]["confusion"]),
                "Rubric-prompted confusion",
            )
        )
        if doc["baseline"]["excluded"]:
            sections.append(
                "Excluded from the paired comparison (no baseline verdict): "
                + ", ".join(doc["baseline"]["excluded"])
            )
    if evaluation.get("agreement"):
        sections.append(render_agreement(CorrelationReport(**evaluation["agreement"])))
    if evaluation.get("factor_agreement"):
        rows = [
            FactorAgreement(
                factor=Factor(int(r["factor"][1:])),
                mean_difference=r["mean_difference"],
                pearson_r=r["pearson_r"],
            )
            for r in evaluation["factor_agreement"]
        ]
        sections.append(render_factor_agreement(rows))
    sections.append(render_importance(evaluation["importance"]["importances"]))
    rows = [
        MisclassifiedPitch(
            pitch_id=m["pitch_id"],
            actual=m["actual"],
            confidence_pct=m["confidence_pct"],
            ai_total=m["ai_total"],
            human_total=m["human_total"],
            error_type=m["error_type"],
        )
        for m in evaluation["misclassified"]
    ]
    sections.append(render_misclassifications(rows))
    return "\n\n".join(sections) + "\n"


def run_experiment(
    config_path: str | Path,
    out_dir: str | Path,
    seed_override: int | None = None,
) -> RunManifest:
    """Run every stage; completed stages with matching digests are skipped."""
    config = load_config(config_path, seed_override)
    runner = Runner(config, out_dir)
    runner.ingest()
    runner.grade()
    runner.train()
    runner.evaluate()
    if config.baseline_enabled:
        runner.compare_baseline()
    runner.report()
    return runner.finish()


def compare_baseline(
    config_path: str | Path,
    out_dir: str | Path,
    seed_override: int | None = None,
) -> RunManifest:
    """Baseline-vs-pipeline comparison; runs prerequisite stages if needed."""
    config = load_config(config_path, seed_override)
    runner = Runner(config, out_dir)
    runner.ingest()
    runner.grade()
    runner.train()
    runner.compare_baseline()
    return runner.finish()
