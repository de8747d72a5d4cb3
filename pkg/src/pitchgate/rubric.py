"""The eight critical factors, the letter-grade scale, and the grade codec.

The scale runs A+ down to C- plus N/A. Numeric scores deliberately skip 3
and 7 so each grade step marks a real jump in investment readiness; the
adjusted score is the single-factor value projected onto the 80-point total
scale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Factor(enum.IntEnum):
    """The eight critical factors, indexed 1 through 8."""

    FEATURES_AND_BENEFITS = 1
    READINESS = 2
    BARRIERS_TO_ENTRY = 3
    ADOPTION = 4
    SUPPLY_CHAIN = 5
    MARKET_SIZE = 6
    ENTREPRENEURIAL_EXPERIENCE = 7
    FINANCIAL_EXPECTATIONS = 8

    @property
    def key(self) -> str:
        """Short wire key: 'f1' .. 'f8'."""
        return f"f{self.value}"

    @property
    def display_name(self) -> str:
        return FACTOR_NAMES[self]


FACTOR_NAMES: dict[Factor, str] = {
    Factor.FEATURES_AND_BENEFITS: "Features & Benefits",
    Factor.READINESS: "Readiness",
    Factor.BARRIERS_TO_ENTRY: "Barriers to Entry",
    Factor.ADOPTION: "Adoption",
    Factor.SUPPLY_CHAIN: "Supply Chain",
    Factor.MARKET_SIZE: "Market Size",
    Factor.ENTREPRENEURIAL_EXPERIENCE: "Entrepreneurial Experience",
    Factor.FINANCIAL_EXPECTATIONS: "Financial Expectations",
}

# Alternate vocabulary seen in older write-ups of the same instrument,
# kept for reference only; canonical names are FACTOR_NAMES.
FACTOR_ALIASES: dict[Factor, str] = {
    Factor.FEATURES_AND_BENEFITS: "Product Adoption",
    Factor.READINESS: "Product Status",
    Factor.BARRIERS_TO_ENTRY: "Protectability",
    Factor.ADOPTION: "Customer Engagement",
    Factor.SUPPLY_CHAIN: "Route to Market",
    Factor.MARKET_SIZE: "Market Potential",
    Factor.ENTREPRENEURIAL_EXPERIENCE: "Relevant Experience",
    Factor.FINANCIAL_EXPECTATIONS: "Financial Model",
}

ALL_FACTORS: tuple[Factor, ...] = tuple(Factor)


class Grade(enum.Enum):
    """Closed ten-symbol scale, ordered best to worst."""

    A_PLUS = "A+"
    A = "A"
    A_MINUS = "A-"
    B_PLUS = "B+"
    B = "B"
    B_MINUS = "B-"
    C_PLUS = "C+"
    C = "C"
    C_MINUS = "C-"
    NA = "N/A"

    @property
    def symbol(self) -> str:
        return self.value


GRADE_ORDER: tuple[Grade, ...] = tuple(Grade)

# Grade -> score conversion. 3 and 7 are intentionally absent from the image.
_GRADE_SCORES: dict[Grade, int] = {
    Grade.A_PLUS: 10,
    Grade.A: 9,
    Grade.A_MINUS: 8,
    Grade.B_PLUS: 6,
    Grade.B: 5,
    Grade.B_MINUS: 4,
    Grade.C_PLUS: 2,
    Grade.C: 1,
    Grade.C_MINUS: 0,
    Grade.NA: 0,
}


class UnknownGrade(ValueError):
    """Token outside the ten-symbol scale."""


def parse_grade(token: str) -> Grade:
    """Parse a grade symbol, tolerating case and surrounding whitespace.

    'NA' and 'N/A' both map to N/A. Anything else outside the scale raises
    UnknownGrade.
    """
    normal = token.strip().upper()
    if normal == "NA":
        return Grade.NA
    for grade in Grade:
        if grade.value == normal:
            return grade
    raise UnknownGrade(f"unknown grade symbol: {token!r}")


def grade_score(grade: Grade) -> int:
    """Numeric score on the 0..10 scale (3 and 7 never produced)."""
    return _GRADE_SCORES[grade]


def adjusted_score(grade: Grade) -> int:
    """Single-factor score projected onto the 80-point total scale."""
    return 8 * grade_score(grade)


@dataclass
class GradeSheet:
    """One grade (and optional rationale) per factor, all eight present."""

    grades: dict[Factor, Grade]
    rationales: dict[Factor, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        present = set(self.grades)
        if present != set(ALL_FACTORS):
            missing = sorted(f.key for f in set(ALL_FACTORS) - present)
            extra = sorted(str(f) for f in present - set(ALL_FACTORS))
            raise ValueError(
                f"grade sheet must cover exactly the eight factors "
                f"(missing: {missing}, extra: {extra})"
            )
        for factor in ALL_FACTORS:
            self.rationales.setdefault(factor, "")

    def to_json_dict(self) -> dict:
        return {
            f.key: {"grade": self.grades[f].symbol, "rationale": self.rationales[f]}
            for f in ALL_FACTORS
        }

    @classmethod
    def from_json_dict(cls, payload: dict) -> "GradeSheet":
        grades: dict[Factor, Grade] = {}
        rationales: dict[Factor, str] = {}
        for factor in ALL_FACTORS:
            entry = payload[factor.key]
            grades[factor] = parse_grade(entry["grade"])
            rationales[factor] = entry.get("rationale", "")
        return cls(grades=grades, rationales=rationales)


@dataclass
class ScoreVector:
    """Per-factor scores in [0, 10] plus their total in [0, 80].

    Scores are real-valued so consensus means (e.g. 9.5) are representable.
    """

    scores: dict[Factor, float]
    total: float

    def __post_init__(self) -> None:
        if set(self.scores) != set(ALL_FACTORS):
            raise ValueError("score vector must cover exactly the eight factors")
        expected = sum(self.scores[f] for f in ALL_FACTORS)
        if abs(expected - self.total) > 1e-9:
            raise ValueError(f"total {self.total} != sum of scores {expected}")

    @classmethod
    def from_scores(cls, scores: dict[Factor, float]) -> "ScoreVector":
        return cls(scores=dict(scores), total=sum(scores[f] for f in ALL_FACTORS))

    def to_json_dict(self) -> dict:
        out = {f.key: self.scores[f] for f in ALL_FACTORS}
        out["total"] = self.total
        return out

    @classmethod
    def from_json_dict(cls, payload: dict) -> "ScoreVector":
        scores = {f: float(payload[f.key]) for f in ALL_FACTORS}
        return cls(scores=scores, total=float(payload["total"]))


def sheet_total(sheet: GradeSheet) -> ScoreVector:
    """Score every factor and sum; total lands in [0, 80]."""
    scores = {f: float(grade_score(sheet.grades[f])) for f in ALL_FACTORS}
    return ScoreVector.from_scores(scores)
