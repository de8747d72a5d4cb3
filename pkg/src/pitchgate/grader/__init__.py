"""Pitch grading through pluggable completion backends, plus human-grade
aggregation and the unprompted baseline mode."""

from .backends import (
    API_KEY_ENV,
    API_URL_ENV,
    BackendError,
    BackendUnreachable,
    RemoteBackend,
    StubBackend,
    stub_complete,
)
from .grading import (
    AssessedPitch,
    BaselineVerdict,
    DecisionNotFound,
    EmptySet,
    GraderError,
    GradingFailed,
    HumanGradeSet,
    MissingFactor,
    NoJsonFound,
    baseline_evaluate,
    consensus,
    grade_many,
    grade_pitch,
    load_assessed,
    load_human_grades,
    parse_decision,
    parse_grader_response,
    save_assessed,
)
from .prompts import (
    BASELINE_PROMPT,
    FACTOR_QUESTIONS,
    PITCH_MARKER,
    PROMPT_VERSION,
    build_baseline_prompt,
    build_cfa_prompt,
    build_recommendation_prompt,
)

__all__ = [
    "API_KEY_ENV",
    "API_URL_ENV",
    "AssessedPitch",
    "BASELINE_PROMPT",
    "BackendError",
    "BackendUnreachable",
    "BaselineVerdict",
    "DecisionNotFound",
    "EmptySet",
    "FACTOR_QUESTIONS",
    "GraderError",
    "GradingFailed",
    "HumanGradeSet",
    "MissingFactor",
    "NoJsonFound",
    "PITCH_MARKER",
    "PROMPT_VERSION",
    "RemoteBackend",
    "StubBackend",
    "baseline_evaluate",
    "build_baseline_prompt",
    "build_cfa_prompt",
    "build_recommendation_prompt",
    "consensus",
    "grade_many",
    "grade_pitch",
    "load_assessed",
    "load_human_grades",
    "parse_decision",
    "parse_grader_response",
    "save_assessed",
    "stub_complete",
]
