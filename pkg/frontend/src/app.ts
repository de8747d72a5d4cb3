import { ApiClient, ApiError } from "./api.js";
import type { EvaluationPayload, HistoryPayload, Submission } from "./types.js";

export interface ValidationResult {
  ok: boolean;
  message?: string;
}

export function validateSubmission(submission: Submission): ValidationResult {
  if (!submission.transcript.trim()) {
    return { ok: false, message: "Paste a pitch transcript before submitting." };
  }
  if (!Number.isFinite(submission.ask_amount) || submission.ask_amount < 0) {
    return { ok: false, message: "Ask amount must be a non-negative number." };
  }
  if (
    !Number.isFinite(submission.ask_equity) ||
    submission.ask_equity < 0 ||
    submission.ask_equity > 100
  ) {
    return { ok: false, message: "Ask equity must lie between 0 and 100." };
  }
  return { ok: true };
}

/** Session lifecycle and submit state, kept free of DOM concerns so the
 * whole flow is testable against the fixture server. */
export class AppState {
  sessionId: string | null = null;
  revisions: EvaluationPayload[] = [];
  history: HistoryPayload | null = null;
  inFlight = false;
  lastError: string | null = null;
  lastSubmission: Submission | null = null;

  constructor(private api: ApiClient) {}

  async ensureSession(existing?: string | null): Promise<string> {
    if (existing) {
      this.sessionId = existing;
    }
    if (!this.sessionId) {
      this.sessionId = await this.api.createSession();
    }
    return this.sessionId;
  }

  /** Validate then submit; one evaluation in flight at a time. */
  async submit(submission: Submission): Promise<EvaluationPayload | null> {
    const valid = validateSubmission(submission);
    if (!valid.ok) {
      this.lastError = valid.message ?? "invalid submission";
      return null;
    }
    if (this.inFlight) {
      return null;
    }
    if (!this.sessionId) {
      throw new Error("session not initialized");
    }
    this.inFlight = true;
    this.lastError = null;
    this.lastSubmission = submission;
    try {
      const result = await this.api.evaluate(this.sessionId, submission);
      this.revisions.push(result);
      this.history = await this.api.history(this.sessionId);
      return result;
    } catch (error) {
      this.lastError =
        error instanceof ApiError
          ? `${error.message} (${error.code})`
          : String(error);
      return null;
    } finally {
      this.inFlight = false;
    }
  }

  /** Re-send the most recent submission after an error. */
  retry(): Promise<EvaluationPayload | null> {
    if (!this.lastSubmission) {
      return Promise.resolve(null);
    }
    return this.submit(this.lastSubmission);
  }
}

export function sessionFromHash(hash: string): string | null {
  const match = /^#\/session\/(.+)$/.exec(hash);
  return match ? decodeURIComponent(match[1]) : null;
}

export function hashForSession(sessionId: string): string {
  return `#/session/${encodeURIComponent(sessionId)}`;
}
