/** Recorded service payloads for the mock server. Revision 1 grades every
 * factor B; revision 2 lifts Readiness (f2) from B to A, which the service
 * reports as a +4 score delta. */

import type {
  EvaluationPayload,
  HistoryPayload,
} from "../src/types.js";

function card(grade: string, factor: string): {
  grade: string;
  rationale: string;
  recommendation: string;
} {
  return {
    grade,
    rationale: `Recorded rationale for ${factor}.`,
    recommendation: `Recorded path to A+ for ${factor}.`,
  };
}

const FACTORS = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"];

function payload(
  overrides: Record<string, { grade: string; score: number }>,
  probability: number,
  decision: "Deal" | "NoDeal",
): EvaluationPayload {
  const grades: EvaluationPayload["grades"] = {};
  const scores: Record<string, number> = {};
  let total = 0;
  for (const key of FACTORS) {
    const { grade, score } = overrides[key] ?? { grade: "B", score: 5 };
    grades[key] = card(grade, key);
    scores[key] = score;
    total += score;
  }
  scores.total = total;
  return { grades, scores, deal_probability: probability, decision };
}

export const SESSION_ID = "fixture-session-0001";

export const REVISION_1 = payload({}, 0.42, "NoDeal");

export const REVISION_2 = payload(
  { f2: { grade: "A", score: 9 } },
  0.57,
  "Deal",
);

export const HISTORY_ONE: HistoryPayload = {
  session_id: SESSION_ID,
  revisions: [
    {
      index: 0,
      scores: REVISION_1.scores,
      deal_probability: REVISION_1.deal_probability,
      decision: REVISION_1.decision,
    },
  ],
  deltas: [],
};

export const HISTORY_TWO: HistoryPayload = {
  session_id: SESSION_ID,
  revisions: [
    ...HISTORY_ONE.revisions,
    {
      index: 1,
      scores: REVISION_2.scores,
      deal_probability: REVISION_2.deal_probability,
      decision: REVISION_2.decision,
    },
  ],
  deltas: [
    {
      from_revision: 0,
      to_revision: 1,
      factors: { f1: 0, f2: 4, f3: 0, f4: 0, f5: 0, f6: 0, f7: 0, f8: 0 },
      total: 4,
    },
  ],
};
