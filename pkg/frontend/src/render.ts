import type { ComparisonDeltas } from "./compare.js";
import {
  FACTOR_KEYS,
  FACTOR_NAMES,
  type EvaluationPayload,
  type HistoryPayload,
} from "./types.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Eight factor cards in fixed order: grade symbol, 0-10 score, rationale,
 * and the improvement recommendation, all verbatim from the payload. */
export function renderFactorCards(payload: EvaluationPayload): string {
  const cards = FACTOR_KEYS.map((key) => {
    const card = payload.grades[key];
    const score = payload.scores[key];
    return `
<article class="factor-card" data-factor="${key}">
  <header>
    <span class="factor-name">${escapeHtml(FACTOR_NAMES[key])}</span>
    <span class="grade-symbol">${escapeHtml(card.grade)}</span>
    <span class="factor-score">${score}/10</span>
  </header>
  <p class="rationale">${escapeHtml(card.rationale)}</p>
  <p class="recommendation">${escapeHtml(card.recommendation)}</p>
</article>`;
  });
  return cards.join("\n");
}

export function renderSummary(payload: EvaluationPayload): string {
  const pct = (payload.deal_probability * 100).toFixed(1);
  const badge = payload.decision === "Deal" ? "badge-deal" : "badge-nodeal";
  return `
<div class="summary">
  <span class="total-score" data-role="total">${payload.scores.total}/80</span>
  <div class="gauge"><div class="gauge-fill" style="width:${pct}%"></div></div>
  <span class="probability">${pct}%</span>
  <span class="decision ${badge}">${payload.decision}</span>
</div>`;
}

function marker(value: number): string {
  if (value > 0) return "&#9650;"; // up
  if (value < 0) return "&#9660;"; // down
  return "&#8212;";
}

export function renderComparison(deltas: ComparisonDeltas): string {
  const rows = FACTOR_KEYS.map((key) => {
    const value = deltas.factors[key];
    const signed = value > 0 ? `+${value}` : `${value}`;
    return `<tr data-factor="${key}"><td>${escapeHtml(FACTOR_NAMES[key])}</td>` +
      `<td class="delta">${signed}</td><td class="marker">${marker(value)}</td></tr>`;
  });
  const totalSigned = deltas.total > 0 ? `+${deltas.total}` : `${deltas.total}`;
  return `
<table class="comparison">
  <tbody>
    ${rows.join("\n    ")}
    <tr class="total-row"><td>Total</td><td class="delta">${totalSigned}</td>` +
    `<td class="marker">${marker(deltas.total)}</td></tr>
  </tbody>
</table>`;
}

export function renderRevisionList(history: HistoryPayload): string {
  const items = history.revisions.map(
    (rev) =>
      `<li data-revision="${rev.index}">Revision ${rev.index + 1}: ` +
      `${rev.scores.total}/80, ${(rev.deal_probability * 100).toFixed(1)}% ` +
      `(${escapeHtml(rev.decision)})</li>`,
  );
  return `<ol class="revisions">${items.join("")}</ol>`;
}

export function renderError(message: string): string {
  return `
<div class="error-banner" role="alert">
  <span>${escapeHtml(message)}</span>
  <button type="button" data-role="retry">Retry</button>
</div>`;
}
