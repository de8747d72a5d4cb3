import { FACTOR_KEYS, type HistoryPayload } from "./types.js";

export interface ComparisonDeltas {
  factors: Record<string, number>;
  total: number;
}

/** Deltas between revisions i and j, telescoped from the server's
 * consecutive-revision delta entries. Comparing adjacent revisions shows a
 * server delta verbatim; i === j yields all zeros. The client never touches
 * grades or scores to derive these numbers. */
export function compareRevisions(
  history: HistoryPayload,
  i: number,
  j: number,
): ComparisonDeltas {
  const count = history.revisions.length;
  if (i < 0 || j < 0 || i >= count || j >= count) {
    throw new RangeError(`revision index out of range: ${i}..${j} of ${count}`);
  }
  const [lo, hi] = i <= j ? [i, j] : [j, i];
  const sign = i <= j ? 1 : -1;
  const factors: Record<string, number> = {};
  for (const key of FACTOR_KEYS) {
    factors[key] = 0;
  }
  let total = 0;
  for (const delta of history.deltas) {
    if (delta.from_revision >= lo && delta.to_revision <= hi) {
      for (const key of FACTOR_KEYS) {
        factors[key] += sign * (delta.factors[key] ?? 0);
      }
      total += sign * delta.total;
    }
  }
  return { factors, total };
}

/** The compare control only appears once there is something to compare. */
export function compareControlVisible(history: HistoryPayload): boolean {
  return history.revisions.length >= 2;
}
