from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pitchgate.corpus import PitchRecord
from pitchgate.features import FeatureMatrix, LabelVector
from pitchgate.grader import AssessedPitch
from pitchgate.rubric import ALL_FACTORS, Grade, GradeSheet, parse_grade, sheet_total

REPO_ROOT = Path(__file__).resolve().parent.parent
SYNTHETIC_CONFIG = REPO_ROOT / "configs" / "synthetic.json"


def make_sheet(*symbols: str) -> GradeSheet:
    """Grade sheet from eight symbols in factor order."""
    assert len(symbols) == 8
    return GradeSheet(
        grades={f: parse_grade(s) for f, s in zip(ALL_FACTORS, symbols)}
    )


def uniform_sheet(symbol: str) -> GradeSheet:
    return make_sheet(*([symbol] * 8))


def make_pitch(
    pitch_id: str = "p1",
    outcome: int = 1,
    ask_amount: int = 100_000,
    ask_equity: float = 10.0,
    transcript: str = "We make solar kettles and sold two thousand units.",
) -> PitchRecord:
    return PitchRecord(
        pitch_id=pitch_id,
        transcript=transcript,
        ask_amount=ask_amount,
        ask_equity=ask_equity,
        outcome=outcome,
    )


def make_assessed(
    pitch_id: str,
    symbols: tuple[str, ...] | str,
    outcome: int = 1,
    ask_amount: int = 100_000,
    ask_equity: float = 10.0,
    transcript: str | None = None,
) -> AssessedPitch:
    sheet = uniform_sheet(symbols) if isinstance(symbols, str) else make_sheet(*symbols)
    pitch = make_pitch(
        pitch_id,
        outcome,
        ask_amount,
        ask_equity,
        transcript=transcript or f"Pitch {pitch_id}: we sell artisanal widgets.",
    )
    return AssessedPitch(
        pitch=pitch,
        sheet=sheet,
        scores=sheet_total(sheet),
        grader_id="test",
        raw_response="",
    )


def training_set(X: np.ndarray, y: np.ndarray, columns: list[str] | None = None):
    from pitchgate.classifiers import TrainingSet

    X = np.asarray(X, dtype=np.float64)
    cols = columns or [f"c{i}" for i in range(X.shape[1])]
    fm = FeatureMatrix(values=X, columns=cols, pitch_ids=[f"r{i}" for i in range(len(X))])
    return TrainingSet(X=fm, y=LabelVector(np.asarray(y, dtype=np.int64)))


def separable_fixture(n: int = 200, seed: int = 5):
    """Linearly separable 2-D points with a comfortable margin."""
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, 2))
    y = (X[:, 0] + X[:, 1] > 0).astype(np.int64)
    X[y == 1] += 0.6
    X[y == 0] -= 0.6
    return training_set(X, y)


def xor_fixture(n_per_cell: int = 12):
    """XOR grid: four exact corner cells, n_per_cell rows each.

    Only the two midpoint splits exist as candidates, so a depth-1 stump is
    stuck near chance while depth 2+ separates the cells exactly.
    """
    cells = [(0.0, 0.0, 0), (0.0, 1.0, 1), (1.0, 0.0, 1), (1.0, 1.0, 0)]
    rows, labels = [], []
    for cx, cy, label in cells:
        rows.extend([[cx, cy]] * n_per_cell)
        labels.extend([label] * n_per_cell)
    return training_set(np.array(rows), np.array(labels))


@pytest.fixture(scope="session")
def shipped_corpus_dir() -> Path:
    return REPO_ROOT / "data" / "synthetic"


@pytest.fixture(scope="session")
def synthetic_config_path() -> Path:
    return SYNTHETIC_CONFIG


@pytest.fixture(scope="session")
def pipeline_run(tmp_path_factory) -> Path:
    """One full stub-backed pipeline run shared by pipeline/service tests."""
    from pitchgate.pipeline import run_experiment

    out = tmp_path_factory.mktemp("pipeline-run")
    run_experiment(SYNTHETIC_CONFIG, out)
    return out
