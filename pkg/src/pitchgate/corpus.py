"""Pitch corpus ingestion: subtitle transcripts, the outcomes CSV, and splits.

Subtitle files from public repositories are messy, so the parser tolerates
missing cue numbers and stray metadata blocks; only a present-but-unparseable
time line is an error. The cleaning rules are fixed (markup tags, bracketed
stage directions, whitespace collapse) so rebuilt corpora are reproducible.
"""

from __future__ import annotations

import csv
import datetime
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class CorpusError(Exception):
    pass


class EmptyInput(CorpusError):
    pass


class MalformedCue(CorpusError):
    pass


class EmptyAfterCleaning(CorpusError):
    pass


class DatasetUnreadable(CorpusError):
    pass


class SchemaMismatch(CorpusError):
    pass


class EmptyCorpus(CorpusError):
    pass


class FractionOutOfRange(CorpusError):
    pass


class TooFewRecords(CorpusError):
    pass


@dataclass
class PitchRecord:
    """One pitch: identity, cleaned transcript, ask terms, known outcome."""

    pitch_id: str
    transcript: str
    ask_amount: int
    ask_equity: float
    outcome: int
    source_meta: dict | None = None

    def __post_init__(self) -> None:
        if not self.pitch_id:
            raise ValueError("pitch_id must be non-empty")
        if not self.transcript:
            raise ValueError(f"{self.pitch_id}: transcript must be non-empty")
        if self.ask_amount < 0:
            raise ValueError(f"{self.pitch_id}: ask_amount must be >= 0")
        if not 0.0 <= self.ask_equity <= 100.0:
            raise ValueError(f"{self.pitch_id}: ask_equity must lie in [0, 100]")
        if self.outcome not in (0, 1):
            raise ValueError(f"{self.pitch_id}: outcome must be 0 or 1")

    def to_json_dict(self) -> dict:
        return {
            "pitch_id": self.pitch_id,
            "transcript": self.transcript,
            "ask_amount": self.ask_amount,
            "ask_equity": self.ask_equity,
            "outcome": self.outcome,
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "PitchRecord":
        return cls(
            pitch_id=payload["pitch_id"],
            transcript=payload["transcript"],
            ask_amount=int(payload["ask_amount"]),
            ask_equity=float(payload["ask_equity"]),
            outcome=int(payload["outcome"]),
        )


@dataclass
class PitchCorpus:
    """Ordered pitch records with unique ids plus ingestion provenance."""

    records: list[PitchRecord]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        seen: set[str] = set()
        for record in self.records:
            if record.pitch_id in seen:
                raise ValueError(f"duplicate pitch_id in corpus: {record.pitch_id}")
            seen.add(record.pitch_id)

    def __len__(self) -> int:
        return len(self.records)

    def ids(self) -> list[str]:
        return [r.pitch_id for r in self.records]

    def outcomes(self) -> np.ndarray:
        return np.array([r.outcome for r in self.records], dtype=np.int64)

    def by_id(self) -> dict[str, PitchRecord]:
        return {r.pitch_id: r for r in self.records}

    def subset(self, pitch_ids: list[str]) -> "PitchCorpus":
        lookup = self.by_id()
        return PitchCorpus(
            records=[lookup[p] for p in pitch_ids], provenance=dict(self.provenance)
        )

    def to_json(self) -> str:
        """Canonical corpus document: a JSON array of record objects."""
        return json.dumps(
            [r.to_json_dict() for r in self.records], indent=2, ensure_ascii=False
        )

    @classmethod
    def from_json(cls, text: str, provenance: dict | None = None) -> "PitchCorpus":
        rows = json.loads(text)
        return cls(
            records=[PitchRecord.from_json_dict(r) for r in rows],
            provenance=provenance or {},
        )


# SubRip time line: HH:MM:SS,mmm --> HH:MM:SS,mmm with optional trailing
# position attributes; some scraped files use '.' instead of ','.
_TIME_LINE = re.compile(
    r"^\s*\d{1,2}:\d{2}:\d{2}[,.]\d{1,3}\s*-->\s*\d{1,2}:\d{2}:\d{2}[,.]\d{1,3}(\s.*)?$"
)


def parse_srt(raw: str) -> str:
    """Concatenate SubRip cue text in cue order, one space between lines.

    Cue numbers and time lines are dropped; cues missing the numeric index
    are accepted. Raises EmptyInput when no cues are found and MalformedCue
    when a time line is present but does not parse.
    """
    if not raw or not raw.strip():
        raise EmptyInput("no cues found in empty input")

    text = raw.replace("\r\n", "\n").replace("\r", "\n")
    blocks = re.split(r"\n\s*\n", text.strip())
    pieces: list[str] = []
    cues = 0
    for block in blocks:
        lines = [ln.strip() for ln in block.split("\n") if ln.strip()]
        if not lines:
            continue
        time_idx = next((i for i, ln in enumerate(lines) if "-->" in ln), None)
        if time_idx is None:
            # Stray metadata block, not a cue; tolerate it.
            continue
        if not _TIME_LINE.match(lines[time_idx]):
            raise MalformedCue(f"unparseable time line: {lines[time_idx]!r}")
        cues += 1
        body = lines[time_idx + 1 :]
        if body:
            pieces.append(" ".join(body))
    if cues == 0:
        raise EmptyInput("no cues found")
    return " ".join(pieces)


_MARKUP_TAG = re.compile(r"<[^>]*>")
_SQUARE_DIRECTION = re.compile(r"\[[^\]]*\]")
_PAREN_LINE = re.compile(r"^\s*\([^)]*\)\s*$")


def clean_transcript(raw: str) -> str:
    """Strip markup and stage directions, collapse whitespace.

    Angle-bracket tags and square-bracket directions go anywhere they appear;
    parenthesized directions are removed only when they make up a whole line,
    since parentheses also occur in speech. Idempotent by construction.
    """
    if not raw:
        raise EmptyInput("cannot clean empty text")
    lines = raw.split("\n")
    kept = [ln for ln in lines if not _PAREN_LINE.match(ln)]
    text = "\n".join(kept)
    text = _MARKUP_TAG.sub(" ", text)
    text = _SQUARE_DIRECTION.sub(" ", text)
    text = re.sub(r"\s+", " ", text).strip()
    if not text:
        raise EmptyAfterCleaning("cleaning removed all content")
    return text


REQUIRED_COLUMNS = ("pitch_id", "deal", "ask_amount_usd", "ask_equity_pct")
OPTIONAL_COLUMNS = ("season", "episode", "title")


def _parse_amount(value: str) -> int:
    cleaned = value.strip().replace("$", "").replace(",", "").replace(" ", "")
    if not cleaned:
        raise ValueError("empty amount")
    return int(round(float(cleaned)))


def _parse_equity(value: str) -> float:
    cleaned = value.strip().rstrip("%").strip()
    if not cleaned:
        raise ValueError("empty equity")
    return float(cleaned)


def load_corpus(dataset_path: str | Path, transcript_dir: str | Path) -> PitchCorpus:
    """Join the outcomes CSV with per-pitch `<pitch_id>.srt` transcripts.

    Rows without a matching, successfully parsed and cleaned transcript are
    skipped and counted in provenance rather than failing the load.
    """
    dataset_path = Path(dataset_path)
    transcript_dir = Path(transcript_dir)
    try:
        with open(dataset_path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            missing = [c for c in REQUIRED_COLUMNS if c not in header]
            if missing:
                raise SchemaMismatch(f"dataset missing required columns: {missing}")
            rows = list(reader)
    except OSError as exc:
        raise DatasetUnreadable(f"cannot read dataset {dataset_path}: {exc}") from exc

    records: list[PitchRecord] = []
    skipped: list[str] = []
    for row in rows:
        pitch_id = (row.get("pitch_id") or "").strip()
        if not pitch_id:
            raise SchemaMismatch("dataset row with empty pitch_id")
        deal_raw = (row.get("deal") or "").strip()
        if deal_raw not in ("0", "1"):
            raise SchemaMismatch(f"{pitch_id}: deal must be 0 or 1, got {deal_raw!r}")
        srt_path = transcript_dir / f"{pitch_id}.srt"
        if not srt_path.exists():
            skipped.append(pitch_id)
            continue
        try:
            transcript = clean_transcript(parse_srt(srt_path.read_text(encoding="utf-8")))
        except CorpusError:
            skipped.append(pitch_id)
            continue
        meta = {k: row[k] for k in OPTIONAL_COLUMNS if row.get(k)}
        try:
            ask_amount = _parse_amount(row["ask_amount_usd"])
            ask_equity = _parse_equity(row["ask_equity_pct"])
        except ValueError as exc:
            raise SchemaMismatch(f"{pitch_id}: bad ask fields ({exc})") from exc
        records.append(
            PitchRecord(
                pitch_id=pitch_id,
                transcript=transcript,
                ask_amount=ask_amount,
                ask_equity=ask_equity,
                outcome=int(deal_raw),
                source_meta=meta or None,
            )
        )

    if not records:
        raise EmptyCorpus(f"no dataset rows joined with transcripts in {transcript_dir}")
    provenance = {
        "dataset_path": str(dataset_path),
        "transcript_dir": str(transcript_dir),
        "ingested_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "skipped_rows": len(skipped),
        "skipped_ids": skipped,
    }
    return PitchCorpus(records=records, provenance=provenance)


def holdout_split(
    corpus: PitchCorpus, test_fraction: float, seed: int
) -> tuple[PitchCorpus, PitchCorpus]:
    """Stratified train/test partition, deterministic for a fixed seed.

    The test side gets round(test_fraction * N) records with per-class counts
    within one of the per-class ideal. Record order within each side follows
    corpus order.
    """
    if not 0.0 < test_fraction < 1.0:
        raise FractionOutOfRange(f"test_fraction must lie in (0, 1), got {test_fraction}")
    outcomes = corpus.outcomes()
    classes = [0, 1]
    class_indices = {c: np.flatnonzero(outcomes == c) for c in classes}
    for c in classes:
        if len(class_indices[c]) < 2:
            raise TooFewRecords(f"need at least 2 records of class {c}")

    n_total = len(corpus)
    n_test = int(round(test_fraction * n_total))
    base = {c: int(np.floor(test_fraction * len(class_indices[c]))) for c in classes}
    remainders = {
        c: test_fraction * len(class_indices[c]) - base[c] for c in classes
    }
    deficit = n_test - sum(base.values())
    for c in sorted(classes, key=lambda c: (-remainders[c], c)):
        if deficit <= 0:
            break
        if base[c] + 1 <= len(class_indices[c]):
            base[c] += 1
            deficit -= 1

    rng = np.random.default_rng(seed)
    test_idx: list[int] = []
    for c in classes:
        shuffled = rng.permutation(class_indices[c])
        test_idx.extend(int(i) for i in shuffled[: base[c]])
    test_set = set(test_idx)
    train_records = [r for i, r in enumerate(corpus.records) if i not in test_set]
    test_records = [r for i, r in enumerate(corpus.records) if i in test_set]
    prov = dict(corpus.provenance)
    return (
        PitchCorpus(records=train_records, provenance=prov),
        PitchCorpus(records=test_records, provenance=dict(prov)),
    )
