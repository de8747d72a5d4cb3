"""Grading operations: response parsing with retry, human consensus, and
the unprompted baseline evaluation."""

from __future__ import annotations

import csv
import json
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from ..corpus import PitchCorpus, PitchRecord
from ..rubric import (
    ALL_FACTORS,
    Factor,
    GradeSheet,
    ScoreVector,
    UnknownGrade,
    grade_score,
    parse_grade,
    sheet_total,
)
from .backends import BackendUnreachable
from .prompts import (
    PROMPT_VERSION,
    build_baseline_prompt,
    build_cfa_prompt,
)


class GraderError(Exception):
    pass


class NoJsonFound(GraderError):
    pass


class MissingFactor(GraderError):
    def __init__(self, factor: Factor):
        self.factor = factor
        super().__init__(f"response missing factor {factor.key} ({factor.display_name})")


class GradingFailed(GraderError):
    def __init__(self, message: str, last_error: Exception, raw_response: str):
        self.last_error = last_error
        self.raw_response = raw_response
        super().__init__(message)


class EmptySet(GraderError):
    pass


class DecisionNotFound(GraderError):
    pass


@dataclass
class AssessedPitch:
    """A graded pitch plus audit data for the response that produced it."""

    pitch: PitchRecord
    sheet: GradeSheet
    scores: ScoreVector
    grader_id: str
    raw_response: str
    prompt_version: str = PROMPT_VERSION

    def to_json_dict(self) -> dict:
        return {
            "pitch_id": self.pitch.pitch_id,
            "grader_id": self.grader_id,
            "prompt_version": self.prompt_version,
            "sheet": self.sheet.to_json_dict(),
            "scores": self.scores.to_json_dict(),
            "raw_response": self.raw_response,
        }

    @classmethod
    def from_json_dict(cls, payload: dict, pitch: PitchRecord) -> "AssessedPitch":
        sheet = GradeSheet.from_json_dict(payload["sheet"])
        return cls(
            pitch=pitch,
            sheet=sheet,
            scores=sheet_total(sheet),
            grader_id=payload["grader_id"],
            raw_response=payload.get("raw_response", ""),
            prompt_version=payload.get("prompt_version", PROMPT_VERSION),
        )


@dataclass
class HumanGradeSet:
    pitch_id: str
    sheets: list[GradeSheet]


@dataclass
class BaselineVerdict:
    pitch_id: str
    decision: int  # Deal=1 / NoDeal=0
    evaluation_text: str
    recommendation_text: str

    def to_json_dict(self) -> dict:
        return {
            "pitch_id": self.pitch_id,
            "decision": self.decision,
            "evaluation_text": self.evaluation_text,
            "recommendation_text": self.recommendation_text,
        }


_FENCE = re.compile(r"```[a-zA-Z]*\n?|```")


def _first_json_object(raw: str) -> dict:
    """The first balanced JSON object in raw text, fences and prose ignored."""
    text = _FENCE.sub("", raw)
    start = text.find("{")
    while start >= 0:
        depth = 0
        in_string = False
        escaped = False
        for i in range(start, len(text)):
            ch = text[i]
            if in_string:
                if escaped:
                    escaped = False
                elif ch == "\\":
                    escaped = True
                elif ch == '"':
                    in_string = False
                continue
            if ch == '"':
                in_string = True
            elif ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    candidate = text[start : i + 1]
                    try:
                        parsed = json.loads(candidate)
                    except json.JSONDecodeError:
                        break
                    if isinstance(parsed, dict):
                        return parsed
                    break
        start = text.find("{", start + 1)
    raise NoJsonFound("no JSON object found in grader response")


def parse_grader_response(raw: str) -> GradeSheet:
    """Extract and validate a grade sheet from a free-form completion."""
    payload = _first_json_object(raw)
    grades: dict[Factor, "object"] = {}
    rationales: dict[Factor, str] = {}
    for factor in ALL_FACTORS:
        if factor.key not in payload:
            raise MissingFactor(factor)
        entry = payload[factor.key]
        if isinstance(entry, str):
            grade_token, rationale = entry, ""
        elif isinstance(entry, dict):
            if "grade" not in entry:
                raise MissingFactor(factor)
            grade_token = entry["grade"]
            rationale = entry.get("rationale", "") or ""
        else:
            raise MissingFactor(factor)
        try:
            grades[factor] = parse_grade(str(grade_token))
        except UnknownGrade as exc:
            raise UnknownGrade(f"{factor.key}: {exc}") from exc
        rationales[factor] = str(rationale)
    return GradeSheet(grades=grades, rationales=rationales)


def grade_pitch(backend, pitch: PitchRecord, max_retries: int = 2) -> AssessedPitch:
    """Grade one pitch, re-asking with the parse error appended on failure."""
    if max_retries < 0:
        raise ValueError("max_retries must be >= 0")
    prompt = build_cfa_prompt(pitch)
    last_error: Exception | None = None
    raw = ""
    for attempt in range(max_retries + 1):
        ask = prompt
        if attempt and last_error is not None:
            ask = (
                prompt
                + "\n\nYour previous reply could not be used: "
                + f"{last_error}. Reply again with exactly the JSON object requested."
            )
        raw = backend.complete(ask)
        try:
            sheet = parse_grader_response(raw)
        except (GraderError, UnknownGrade) as exc:
            last_error = exc
            continue
        return AssessedPitch(
            pitch=pitch,
            sheet=sheet,
            scores=sheet_total(sheet),
            grader_id=getattr(backend, "grader_id", backend.kind),
            raw_response=raw,
        )
    raise GradingFailed(
        f"{pitch.pitch_id}: grading failed after {max_retries + 1} attempts "
        f"({last_error})",
        last_error=last_error or GraderError("unknown"),
        raw_response=raw,
    )


def grade_many(
    backend,
    pitches: list[PitchRecord],
    max_retries: int = 2,
    parallelism: int = 1,
) -> list[AssessedPitch]:
    """Grade a batch; backend calls may run concurrently, results keep order."""
    if parallelism <= 1:
        return [grade_pitch(backend, p, max_retries) for p in pitches]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(lambda p: grade_pitch(backend, p, max_retries), pitches))


def consensus(humans: HumanGradeSet) -> ScoreVector:
    """Arithmetic mean of the graders' numeric scores, factor by factor."""
    if not humans.sheets:
        raise EmptySet(f"{humans.pitch_id}: no grade sheets to average")
    scores: dict[Factor, float] = {}
    for factor in ALL_FACTORS:
        values = [grade_score(sheet.grades[factor]) for sheet in humans.sheets]
        scores[factor] = sum(values) / len(values)
    return ScoreVector.from_scores(scores)


def load_human_grades(path: str | Path) -> dict[str, HumanGradeSet]:
    """CSV with columns pitch_id, grader, f1..f8 holding grade symbols."""
    sets: dict[str, HumanGradeSet] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"pitch_id", *(f.key for f in ALL_FACTORS)}
        missing = required - set(reader.fieldnames or [])
        if missing:
            raise GraderError(f"human grades CSV missing columns: {sorted(missing)}")
        for row in reader:
            pitch_id = row["pitch_id"].strip()
            sheet = GradeSheet(
                grades={f: parse_grade(row[f.key]) for f in ALL_FACTORS}
            )
            sets.setdefault(pitch_id, HumanGradeSet(pitch_id, [])).sheets.append(sheet)
    return sets


_DECISION = re.compile(r"no[\s\-]*deal|deal", re.IGNORECASE)


def parse_decision(raw: str) -> int:
    """Deal/NoDeal from free text; any 'no deal' outranks a bare 'deal'."""
    matches = [m.group(0).lower() for m in _DECISION.finditer(raw)]
    if not matches:
        raise DecisionNotFound("no deal/no-deal statement in response")
    if any(m.startswith("no") for m in matches):
        return 0
    return 1


def baseline_evaluate(backend, pitch: PitchRecord) -> BaselineVerdict:
    """Unprompted evaluation in a fresh context; decision extracted, never
    defaulted."""
    raw = backend.complete(build_baseline_prompt(pitch))
    decision = parse_decision(raw)
    evaluation_text = raw
    recommendation_text = ""
    split = re.search(r"recommendation\s*:", raw, re.IGNORECASE)
    if split:
        evaluation_text = raw[: split.start()].strip()
        recommendation_text = raw[split.end() :].strip()
    return BaselineVerdict(
        pitch_id=pitch.pitch_id,
        decision=decision,
        evaluation_text=evaluation_text,
        recommendation_text=recommendation_text,
    )


def save_assessed(path: str | Path, assessed: list[AssessedPitch]) -> None:
    """JSON Lines: one object per assessed pitch."""
    with open(path, "w", encoding="utf-8") as fh:
        for item in assessed:
            fh.write(json.dumps(item.to_json_dict(), ensure_ascii=False) + "\n")


def load_assessed(path: str | Path, corpus: PitchCorpus) -> list[AssessedPitch]:
    lookup = corpus.by_id()
    out: list[AssessedPitch] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            payload = json.loads(line)
            pitch = lookup.get(payload["pitch_id"])
            if pitch is None:
                raise GraderError(
                    f"assessed pitch {payload['pitch_id']} not present in corpus"
                )
            out.append(AssessedPitch.from_json_dict(payload, pitch))
    return out
