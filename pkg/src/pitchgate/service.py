"""Interactive pitch evaluation service.

Grades a submitted pitch with the loaded backend, scores it with the
trained model produced by the CLI, asks the backend for per-factor
improvement recommendations, and keeps per-session revision history so
users can iterate. Sessions live in memory with an optional append-only
JSON Lines log; a session is the unit of mutual exclusion.
"""

from __future__ import annotations

import datetime
import json
import os
import secrets
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .classifiers import decide, model_from_dict
from .corpus import PitchRecord
from .features import FeatureSpec, assemble
from .grader import (
    BackendUnreachable,
    GradingFailed,
    PROMPT_VERSION,
    build_recommendation_prompt,
    grade_pitch,
)
from .rubric import ALL_FACTORS
from .util import sha256_file

SERVICE_TOKEN_ENV = "PITCHGATE_SERVICE_TOKEN"


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


@dataclass
class EvaluationResult:
    sheet_json: dict  # f1..f8 -> {grade, rationale, recommendation}
    scores_json: dict  # f1..f8 + total
    deal_probability: float
    decision: int

    def to_json_dict(self) -> dict:
        return {
            "grades": self.sheet_json,
            "scores": self.scores_json,
            "deal_probability": self.deal_probability,
            "decision": "Deal" if self.decision == 1 else "NoDeal",
        }


@dataclass
class Session:
    session_id: str
    created_at: str
    revisions: list[EvaluationResult] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)


class EvaluationService:
    def __init__(
        self,
        model_path: str | Path,
        backend,
        max_retries: int = 2,
        persist_path: str | Path | None = None,
    ):
        self.backend = backend
        self.max_retries = max_retries
        self.persist_path = Path(persist_path) if persist_path else None
        self.sessions: dict[str, Session] = {}
        self.sessions_lock = threading.Lock()
        model_path = Path(model_path)
        if not model_path.exists():
            raise FileNotFoundError(f"model artifact not found: {model_path}")
        doc = json.loads(model_path.read_text(encoding="utf-8"))
        self.model = model_from_dict(doc["model"])
        self.spec = FeatureSpec.from_text(doc["feature_spec"])
        self.model_digest = sha256_file(model_path)

    def _log(self, event: dict) -> None:
        if self.persist_path is None:
            return
        with open(self.persist_path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, ensure_ascii=False) + "\n")

    def create_session(self) -> Session:
        session = Session(
            session_id=secrets.token_hex(16),
            created_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
        )
        with self.sessions_lock:
            self.sessions[session.session_id] = session
        self._log({"event": "session_created", "session_id": session.session_id})
        return session

    def get_session(self, session_id: str) -> Session:
        with self.sessions_lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ServiceError(404, "unknown_session", f"no session {session_id}")
        return session

    def evaluate_submission(
        self,
        session: Session,
        transcript: str,
        ask_amount: int,
        ask_equity: float,
    ) -> EvaluationResult:
        if not transcript or not transcript.strip():
            raise ServiceError(400, "empty_transcript", "transcript must be non-empty")
        # A session is the unit of mutual exclusion: the whole grade/score/
        # append sequence runs serialized per session.
        with session.lock:
            try:
                pitch = PitchRecord(
                    pitch_id=(
                        f"session-{session.session_id[:8]}-r{len(session.revisions) + 1}"
                    ),
                    transcript=transcript.strip(),
                    ask_amount=int(ask_amount),
                    ask_equity=float(ask_equity),
                    outcome=0,  # unknown at submission time; not used for scoring
                )
            except ValueError as exc:
                raise ServiceError(400, "invalid_submission", str(exc)) from exc

            try:
                assessed = grade_pitch(self.backend, pitch, max_retries=self.max_retries)
            except (GradingFailed, BackendUnreachable) as exc:
                raise ServiceError(
                    502, "grading_failed", f"{exc}; try submitting again"
                ) from exc

            X, _ = assemble([assessed], self.spec)
            probability = float(self.model.predict_proba_matrix(X.values)[0])
            decision = decide(probability, 0.5)

            sheet_json: dict = {}
            for factor in ALL_FACTORS:
                grade = assessed.sheet.grades[factor]
                rationale = assessed.sheet.rationales[factor]
                try:
                    recommendation = self.backend.complete(
                        build_recommendation_prompt(factor, grade, rationale, pitch)
                    )
                except Exception:
                    recommendation = ""
                sheet_json[factor.key] = {
                    "grade": grade.symbol,
                    "rationale": rationale,
                    "recommendation": recommendation.strip(),
                }
            result = EvaluationResult(
                sheet_json=sheet_json,
                scores_json=assessed.scores.to_json_dict(),
                deal_probability=probability,
                decision=decision,
            )
            session.revisions.append(result)
            revision_number = len(session.revisions)
        self._log(
            {
                "event": "evaluation",
                "session_id": session.session_id,
                "revision": revision_number,
                "result": result.to_json_dict(),
            }
        )
        return result

    def session_history(self, session_id: str) -> dict:
        session = self.get_session(session_id)
        with session.lock:
            revisions = list(session.revisions)
        summaries = [
            {
                "index": i,
                "scores": r.scores_json,
                "deal_probability": r.deal_probability,
                "decision": "Deal" if r.decision == 1 else "NoDeal",
            }
            for i, r in enumerate(revisions)
        ]
        deltas = []
        for i in range(1, len(revisions)):
            prev, cur = revisions[i - 1].scores_json, revisions[i].scores_json
            entry = {
                "from_revision": i - 1,
                "to_revision": i,
                "factors": {
                    f.key: cur[f.key] - prev[f.key] for f in ALL_FACTORS
                },
                "total": cur["total"] - prev["total"],
            }
            deltas.append(entry)
        return {"session_id": session_id, "revisions": summaries, "deltas": deltas}


class SubmissionBody(BaseModel):
    transcript: str = ""
    ask_amount: int = 0
    ask_equity: float = 0.0


def create_app(
    model_path: str | Path,
    backend,
    persist_path: str | Path | None = None,
    static_dir: str | Path | None = None,
    token: str | None = None,
) -> FastAPI:
    service = EvaluationService(model_path, backend, persist_path=persist_path)
    token = token if token is not None else os.environ.get(SERVICE_TOKEN_ENV)
    app = FastAPI(title="pitchgate", version="0.1.0")
    app.state.service = service

    def _error(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(
            status_code=status, content={"error": {"code": code, "message": message}}
        )

    @app.exception_handler(ServiceError)
    async def _service_error(_request: Request, exc: ServiceError):
        return _error(exc.status, exc.code, exc.message)

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_request: Request, exc: RequestValidationError):
        return _error(400, "invalid_submission", str(exc.errors()[:1]))

    @app.middleware("http")
    async def _auth(request: Request, call_next):
        if token and request.url.path.startswith("/api/"):
            supplied = request.headers.get("Authorization", "")
            if supplied != f"Bearer {token}":
                return _error(401, "unauthorized", "missing or invalid bearer token")
        return await call_next(request)

    # Handlers are sync on purpose: FastAPI runs them in a threadpool, so
    # blocking backend round-trips and per-session locks never stall the
    # event loop.

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "model_digest": service.model_digest,
            "prompt_version": PROMPT_VERSION,
        }

    @app.post("/api/sessions")
    def create_session():
        session = service.create_session()
        return {"session_id": session.session_id}

    @app.post("/api/sessions/{session_id}/evaluate")
    def evaluate(session_id: str, body: SubmissionBody):
        session = service.get_session(session_id)
        result = service.evaluate_submission(
            session, body.transcript, body.ask_amount, body.ask_equity
        )
        return result.to_json_dict()

    @app.get("/api/sessions/{session_id}/history")
    def history(session_id: str):
        return service.session_history(session_id)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
