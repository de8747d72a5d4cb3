import { ApiClient } from "./api.js";
import { AppState, hashForSession, sessionFromHash, validateSubmission } from "./app.js";
import { compareControlVisible, compareRevisions } from "./compare.js";
import {
  renderComparison,
  renderError,
  renderFactorCards,
  renderRevisionList,
  renderSummary,
} from "./render.js";
import type { Submission } from "./types.js";

const api = new ApiClient("");
const state = new AppState(api);

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readSubmission(): Submission {
  return {
    transcript: el<HTMLTextAreaElement>("transcript").value,
    ask_amount: Number(el<HTMLInputElement>("ask-amount").value || "0"),
    ask_equity: Number(el<HTMLInputElement>("ask-equity").value || "0"),
  };
}

function syncCompareControl(): void {
  const panel = el("compare-panel");
  if (!state.history || !compareControlVisible(state.history)) {
    panel.hidden = true;
    return;
  }
  panel.hidden = false;
  const options = state.history.revisions
    .map((rev) => `<option value="${rev.index}">Revision ${rev.index + 1}</option>`)
    .join("");
  el<HTMLSelectElement>("compare-from").innerHTML = options;
  el<HTMLSelectElement>("compare-to").innerHTML = options;
  el<HTMLSelectElement>("compare-to").value = String(
    state.history.revisions.length - 1,
  );
  renderCompare();
}

function renderCompare(): void {
  if (!state.history) return;
  const i = Number(el<HTMLSelectElement>("compare-from").value);
  const j = Number(el<HTMLSelectElement>("compare-to").value);
  el("comparison").innerHTML = renderComparison(compareRevisions(state.history, i, j));
}

function showLatest(): void {
  const latest = state.revisions[state.revisions.length - 1];
  if (!latest) return;
  el("summary").innerHTML = renderSummary(latest);
  el("factors").innerHTML = renderFactorCards(latest);
  if (state.history) {
    el("revision-list").innerHTML = renderRevisionList(state.history);
  }
  syncCompareControl();
}

async function handleSubmit(): Promise<void> {
  const submission = readSubmission();
  const validation = validateSubmission(submission);
  const banner = el("banner");
  if (!validation.ok) {
    banner.innerHTML = renderError(validation.message ?? "invalid submission");
    wireRetry();
    return;
  }
  const button = el<HTMLButtonElement>("submit");
  button.disabled = true;
  banner.innerHTML = "";
  try {
    const result = await state.submit(submission);
    if (result) {
      showLatest();
    } else if (state.lastError) {
      banner.innerHTML = renderError(state.lastError);
      wireRetry();
    }
  } finally {
    button.disabled = false;
  }
}

function wireRetry(): void {
  const retry = document.querySelector<HTMLButtonElement>('[data-role="retry"]');
  retry?.addEventListener("click", () => void handleSubmit());
}

async function boot(): Promise<void> {
  const existing = sessionFromHash(window.location.hash);
  const sessionId = await state.ensureSession(existing);
  window.location.hash = hashForSession(sessionId);
  el("submit").addEventListener("click", (event) => {
    event.preventDefault();
    void handleSubmit();
  });
  el("compare-from").addEventListener("change", renderCompare);
  el("compare-to").addEventListener("change", renderCompare);
}

void boot();
