"""Prompt templates: the factor-rubric grading prompt, the unprompted
baseline prompt, and the per-factor improvement prompt.

The grading prompt carries every evaluation question verbatim, the full
grade scale with the note that 3 and 7 do not exist, and a JSON output
instruction matching the grade-sheet wire form. Everything pitch-specific
sits after PITCH_MARKER so two pitches differ only in that section.
"""

from __future__ import annotations

from ..corpus import PitchRecord
from ..rubric import ALL_FACTORS, Factor, Grade, grade_score

PROMPT_VERSION = "cfa-v1"

# Factor -> list of (criteria label, evaluation question).
FACTOR_QUESTIONS: dict[Factor, list[tuple[str, str]]] = {
    Factor.FEATURES_AND_BENEFITS: [
        (
            "Performance Advantages",
            "Does the product offer competitive advantages over current solutions?",
        ),
        ("Benefits and Costs", "Are benefits substantial relative to costs?"),
        ("Customer Demands", "Does it meet specific customer needs effectively?"),
    ],
    Factor.READINESS: [
        (
            "Product Delivery",
            "Is the product ready for market, with key milestones achieved?",
        ),
        (
            "Validation Tests",
            "Are there beta tests or customer validations supporting readiness?",
        ),
    ],
    Factor.BARRIERS_TO_ENTRY: [
        (
            "Uniqueness",
            "Does the venture have proprietary tech or strong IP protection?",
        ),
        ("Market Differentiation", "Are there clear competitive advantages?"),
    ],
    Factor.ADOPTION: [
        (
            "Customer Engagement",
            "Is there evidence of customer interest or early adoption?",
        ),
        ("Market Validation", "Have customers committed to purchasing?"),
    ],
    Factor.SUPPLY_CHAIN: [
        (
            "Operational Readiness",
            "Are supply chains and partnerships well established?",
        ),
    ],
    Factor.MARKET_SIZE: [
        (
            "Revenue Potential",
            "Is the market size large enough to support high growth?",
        ),
    ],
    Factor.ENTREPRENEURIAL_EXPERIENCE: [
        (
            "Industry Expertise",
            "Does the team have relevant industry or startup experience?",
        ),
    ],
    Factor.FINANCIAL_EXPECTATIONS: [
        ("Financial Viability", "Are the projections realistic and sustainable?"),
    ],
}

PITCH_MARKER = "--- PITCH ---"
GRADE_OUTPUT_MARKER = "Respond with a single JSON object"
RECOMMENDATION_MARKER = "what specific changes would earn an A+"

BASELINE_PROMPT = (
    "Attached are transcripts from Shark Tank pitches, where startups are "
    "seeking investments. For each pitch, please analyze and provide a "
    "recommendation on whether an investor should consider funding. Include "
    "specific reasons for your recommendation based on the pitch details. "
    "Additionally, offer targeted advice to each entrepreneur on how they "
    "could refine their business model or pitch to enhance their chances of "
    "securing an investment. Finally, clearly state a \"deal\" or \"no deal\" "
    "decision on whether an investor should fund this startup."
)


def _grade_scale_lines() -> list[str]:
    lines = ["Grade  Score"]
    for grade in Grade:
        lines.append(f"{grade.symbol:<6} {grade_score(grade)}")
    return lines


def _rubric_section() -> str:
    lines = ["CRITICAL FACTORS AND EVALUATION QUESTIONS", ""]
    for factor in ALL_FACTORS:
        lines.append(f"{factor.value}. {factor.display_name}")
        for label, question in FACTOR_QUESTIONS[factor]:
            lines.append(f"   - {label}: {question}")
        lines.append("")
    return "\n".join(lines)


_STATIC_PROMPT = "\n".join(
    [
        "You are evaluating a startup pitch transcript against eight critical",
        "factors. Grade every factor on the letter scale below and justify each",
        "grade briefly from the pitch content.",
        "",
        _rubric_section(),
        "GRADE SCALE",
        "",
        *_grade_scale_lines(),
        "",
        "The scores 3 and 7 do not exist on this scale: each grade step marks a",
        "substantial jump in investment readiness. Use N/A only when the pitch",
        "offers no evidence at all for a factor; C- means the evidence is poor.",
        "",
        "OUTPUT FORMAT",
        "",
        GRADE_OUTPUT_MARKER + " of the form",
        '{"f1": {"grade": "<symbol>", "rationale": "<one or two sentences>"},',
        ' "f2": {...}, ..., "f8": {...}}',
        "using exactly the grade symbols listed above. No other text is needed.",
        "",
    ]
)


def pitch_section(pitch: PitchRecord) -> str:
    return "\n".join(
        [
            PITCH_MARKER,
            "Transcript:",
            pitch.transcript,
            "",
            f"Ask amount (USD): {pitch.ask_amount}",
            f"Ask equity (%): {pitch.ask_equity}",
        ]
    )


def build_cfa_prompt(pitch: PitchRecord) -> str:
    """Full grading prompt: static rubric plus the pitch-specific section."""
    return _STATIC_PROMPT + "\n" + pitch_section(pitch)


def build_baseline_prompt(pitch: PitchRecord) -> str:
    """The unprompted-evaluation request with the transcript appended."""
    return "\n".join(
        [
            BASELINE_PROMPT,
            "",
            PITCH_MARKER,
            "Transcript:",
            pitch.transcript,
            "",
            f"Ask amount (USD): {pitch.ask_amount}",
            f"Ask equity (%): {pitch.ask_equity}",
        ]
    )


def build_recommendation_prompt(
    factor: Factor, grade: Grade, rationale: str, pitch: PitchRecord
) -> str:
    """Ask the backend how this factor could reach the top grade."""
    questions = "\n".join(
        f"- {label}: {question}" for label, question in FACTOR_QUESTIONS[factor]
    )
    return "\n".join(
        [
            f"A startup pitch was graded {grade.symbol} on the factor "
            f"'{factor.display_name}'.",
            f"Grading rationale: {rationale or '(none given)'}",
            "",
            "The factor is assessed through these questions:",
            questions,
            "",
            f"In two or three sentences, tell the entrepreneur {RECOMMENDATION_MARKER}",
            "on this factor.",
            "",
            pitch_section(pitch),
        ]
    )
