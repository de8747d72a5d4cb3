import type { EvaluationPayload, HistoryPayload, Submission } from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "unknown";
  let message = `request failed with status ${response.status}`;
  try {
    const body = await response.json();
    if (body?.error) {
      code = body.error.code ?? code;
      message = body.error.message ?? message;
    }
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiError(response.status, code, message);
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, init);
    if (!response.ok) {
      throw await parseError(response);
    }
    return (await response.json()) as T;
  }

  async createSession(): Promise<string> {
    const body = await this.request<{ session_id: string }>("/api/sessions", {
      method: "POST",
    });
    return body.session_id;
  }

  evaluate(sessionId: string, submission: Submission): Promise<EvaluationPayload> {
    return this.request<EvaluationPayload>(
      `/api/sessions/${encodeURIComponent(sessionId)}/evaluate`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(submission),
      },
    );
  }

  history(sessionId: string): Promise<HistoryPayload> {
    return this.request<HistoryPayload>(
      `/api/sessions/${encodeURIComponent(sessionId)}/history`,
    );
  }
}
