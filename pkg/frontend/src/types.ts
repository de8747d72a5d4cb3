/** JSON contracts of the evaluation service. The UI never recomputes any of
 * these numbers; it only formats them. */

export interface FactorCard {
  grade: string;
  rationale: string;
  recommendation: string;
}

export interface EvaluationPayload {
  grades: Record<string, FactorCard>;
  scores: Record<string, number>; // f1..f8 plus "total"
  deal_probability: number;
  decision: "Deal" | "NoDeal";
}

export interface RevisionSummary {
  index: number;
  scores: Record<string, number>;
  deal_probability: number;
  decision: string;
}

export interface HistoryDelta {
  from_revision: number;
  to_revision: number;
  factors: Record<string, number>;
  total: number;
}

export interface HistoryPayload {
  session_id: string;
  revisions: RevisionSummary[];
  deltas: HistoryDelta[];
}

export interface Submission {
  transcript: string;
  ask_amount: number;
  ask_equity: number;
}

export const FACTOR_KEYS = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"] as const;

export const FACTOR_NAMES: Record<string, string> = {
  f1: "Features & Benefits",
  f2: "Readiness",
  f3: "Barriers to Entry",
  f4: "Adoption",
  f5: "Supply Chain",
  f6: "Market Size",
  f7: "Entrepreneurial Experience",
  f8: "Financial Expectations",
};
