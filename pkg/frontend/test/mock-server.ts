/** Recorded-fixture stand-in for the evaluation service. Keeps a call count
 * per session so consecutive evaluate calls replay revision 1 then 2, and the
 * history endpoint reflects how many evaluations have happened. */

import { createServer, type Server } from "node:http";

import {
  HISTORY_ONE,
  HISTORY_TWO,
  REVISION_1,
  REVISION_2,
  SESSION_ID,
} from "./fixtures.js";

export interface MockServer {
  url: string;
  server: Server;
  stop(): Promise<void>;
  reset(): void;
}

export async function startMockServer(): Promise<MockServer> {
  const evaluations = new Map<string, number>();

  const server = createServer((req, res) => {
    const send = (status: number, body: unknown) => {
      res.writeHead(status, { "Content-Type": "application/json" });
      res.end(JSON.stringify(body));
    };
    const url = req.url ?? "";

    if (req.method === "POST" && url === "/api/sessions") {
      evaluations.set(SESSION_ID, 0);
      return send(200, { session_id: SESSION_ID });
    }

    const evaluate = /^\/api\/sessions\/([^/]+)\/evaluate$/.exec(url);
    if (req.method === "POST" && evaluate) {
      const sessionId = decodeURIComponent(evaluate[1]);
      if (!evaluations.has(sessionId)) {
        return send(404, {
          error: { code: "unknown_session", message: `no session ${sessionId}` },
        });
      }
      let raw = "";
      req.on("data", (chunk) => (raw += chunk));
      req.on("end", () => {
        const body = JSON.parse(raw || "{}");
        if (typeof body.transcript === "string" && body.transcript.includes("[break]")) {
          return send(502, {
            error: { code: "grading_failed", message: "backend unreachable; try again" },
          });
        }
        const count = (evaluations.get(sessionId) ?? 0) + 1;
        evaluations.set(sessionId, count);
        return send(200, count === 1 ? REVISION_1 : REVISION_2);
      });
      return;
    }

    const history = /^\/api\/sessions\/([^/]+)\/history$/.exec(url);
    if (req.method === "GET" && history) {
      const sessionId = decodeURIComponent(history[1]);
      if (!evaluations.has(sessionId)) {
        return send(404, {
          error: { code: "unknown_session", message: `no session ${sessionId}` },
        });
      }
      const count = evaluations.get(sessionId) ?? 0;
      if (count === 0) {
        return send(200, { session_id: sessionId, revisions: [], deltas: [] });
      }
      return send(200, count === 1 ? HISTORY_ONE : HISTORY_TWO);
    }

    if (req.method === "GET" && url === "/healthz") {
      return send(200, {
        status: "ok",
        model_digest: "f".repeat(64),
        prompt_version: "fixture",
      });
    }

    return send(404, { error: { code: "not_found", message: url } });
  });

  await new Promise<void>((resolve) => server.listen(0, "127.0.0.1", resolve));
  const address = server.address();
  if (address === null || typeof address === "string") {
    throw new Error("mock server failed to bind a port");
  }

  return {
    url: `http://127.0.0.1:${address.port}`,
    server,
    stop: () => new Promise((resolve) => server.close(() => resolve())),
    reset: () => evaluations.clear(),
  };
}
