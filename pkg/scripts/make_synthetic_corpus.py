"""Regenerate the shipped synthetic corpus: 60 pitches (40 deals, 20 passes)
with SubRip transcripts, the outcomes CSV, and three synthetic human graders
covering the first 31 pitches.

Deterministic; run from the repository root:

    python scripts/make_synthetic_corpus.py
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "synthetic"

PRODUCTS = [
    ("collapsible kayak", "outdoor retailers"),
    ("smart compost bin", "urban households"),
    ("gluten-free ramen kit", "grocery chains"),
    ("magnetic phone mount", "rideshare drivers"),
    ("modular dog crate", "pet boutiques"),
    ("solar camping lantern", "sporting goods stores"),
    ("cold brew concentrate", "office kitchens"),
    ("ergonomic garden kneeler", "garden centers"),
    ("kids coding card game", "toy stores"),
    ("reusable produce wrap", "zero-waste shops"),
    ("heated travel blanket", "airline passengers"),
    ("adjustable desk riser", "remote workers"),
    ("probiotic lemonade", "health food stores"),
    ("stackable spice rack", "kitchen outfitters"),
    ("noise-dampening booth", "open-plan offices"),
]

OPENERS = [
    "Hi Sharks, I'm {founder} and this is {company}.",
    "Hello Sharks. My name is {founder}, founder of {company}.",
    "Sharks, meet {company}. I'm {founder}.",
]

TRACTION = [
    "Last year we did {revenue} thousand dollars in sales.",
    "We have sold {units} thousand units since launch.",
    "Our monthly revenue has grown {growth} percent quarter over quarter.",
    "We are in {stores} retail locations across the country.",
]

CLOSERS = [
    "We're asking {amount} thousand dollars for {equity} percent of the company.",
    "Today we're offering {equity} percent for {amount} thousand dollars.",
]

STAGE_NOISE = ["[applause]", "[music]", "(cheering)", "<i>upbeat music</i>"]


def cue(index: int, start_s: int, text: str) -> str:
    def stamp(total: int) -> str:
        h, rem = divmod(total, 3600)
        m, s = divmod(rem, 60)
        return f"{h:02d}:{m:02d}:{s:02d},000"

    return f"{index}\n{stamp(start_s)} --> {stamp(start_s + 4)}\n{text}\n"


def main() -> None:
    rng = random.Random(20240601)
    transcripts = OUT / "transcripts"
    transcripts.mkdir(parents=True, exist_ok=True)

    outcomes = [1] * 40 + [0] * 20
    rng.shuffle(outcomes)

    rows = []
    for i, outcome in enumerate(outcomes, start=1):
        pitch_id = f"pitch{i:03d}"
        product, market = rng.choice(PRODUCTS)
        founder = rng.choice(
            ["Dana", "Miguel", "Priya", "Sam", "Yuki", "Lena", "Omar", "Tess"]
        )
        company = f"{product.split()[0].title()}{rng.choice(['Co', 'Labs', 'Works'])}"
        amount = rng.choice([50, 100, 150, 200, 250, 300, 400, 500])
        equity = rng.choice([5.0, 7.5, 10.0, 12.5, 15.0, 20.0, 25.0])

        lines = [
            rng.choice(OPENERS).format(founder=founder, company=company),
            f"We make a {product} for {market}.",
            rng.choice(TRACTION).format(
                revenue=rng.randint(40, 900),
                units=rng.randint(5, 80),
                growth=rng.randint(10, 60),
                stores=rng.randint(20, 400),
            ),
            rng.choice(CLOSERS).format(amount=amount, equity=equity),
        ]
        # Sprinkle stage noise the cleaning pass must strip.
        if rng.random() < 0.5:
            lines.insert(rng.randrange(len(lines)), rng.choice(STAGE_NOISE))

        cues = []
        start = rng.randint(0, 30)
        for j, line in enumerate(lines, start=1):
            cues.append(cue(j, start, line))
            start += 5
        (transcripts / f"{pitch_id}.srt").write_text("\n".join(cues), encoding="utf-8")

        rows.append(
            {
                "pitch_id": pitch_id,
                "deal": outcome,
                "ask_amount_usd": amount * 1000,
                "ask_equity_pct": equity,
                "season": 1 + (i - 1) // 20,
                "episode": 1 + (i - 1) % 20,
                "title": company,
            }
        )

    with open(OUT / "dataset.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh,
            fieldnames=[
                "pitch_id",
                "deal",
                "ask_amount_usd",
                "ask_equity_pct",
                "season",
                "episode",
                "title",
            ],
        )
        writer.writeheader()
        writer.writerows(rows)

    # Three synthetic graders for the first 31 pitches. Graders mostly agree:
    # grader 2 and 3 jitter around grader 1's pick by one scale step.
    scale = ["A+", "A", "A-", "B+", "B", "B-", "C+", "C", "C-"]
    grade_rows = []
    for row in rows[:31]:
        base = [rng.randrange(len(scale)) for _ in range(8)]
        for grader in ("g1", "g2", "g3"):
            picks = [
                min(len(scale) - 1, max(0, b + (0 if grader == "g1" else rng.choice([-1, 0, 0, 1]))))
                for b in base
            ]
            grade_rows.append(
                {
                    "pitch_id": row["pitch_id"],
                    "grader": grader,
                    **{f"f{i + 1}": scale[p] for i, p in enumerate(picks)},
                }
            )
    with open(OUT / "human_grades.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["pitch_id", "grader"] + [f"f{i}" for i in range(1, 9)]
        )
        writer.writeheader()
        writer.writerows(grade_rows)
    print(f"wrote {len(rows)} pitches and {len(grade_rows)} grade rows to {OUT}")


if __name__ == "__main__":
    main()
