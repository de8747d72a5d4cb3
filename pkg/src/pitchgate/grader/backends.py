"""Completion backends: a remote chat-completions endpoint and a
deterministic offline stub.

The stub answers every prompt kind the pipeline emits (grading, baseline
evaluation, factor recommendations) as a pure function of the prompt's
pitch-specific section and the stub seed, which makes whole-corpus runs
reproducible bit for bit without a network.
"""

from __future__ import annotations

import hashlib
import json
import os
import time

import requests

from ..rubric import ALL_FACTORS, Grade
from .prompts import (
    BASELINE_PROMPT,
    GRADE_OUTPUT_MARKER,
    PITCH_MARKER,
    RECOMMENDATION_MARKER,
)

API_URL_ENV = "PITCHGATE_API_URL"
API_KEY_ENV = "PITCHGATE_API_KEY"

# Grades the stub hands out; N/A is reserved for evidence-free sections.
_REAL_GRADES = tuple(g for g in Grade if g is not Grade.NA)


class BackendError(Exception):
    pass


class BackendUnreachable(BackendError):
    pass


def _pitch_payload(prompt: str) -> str:
    """The pitch-specific part of a prompt, or the whole prompt without one."""
    marker = prompt.find(PITCH_MARKER)
    return prompt if marker < 0 else prompt[marker:]


def _transcript_of(prompt: str) -> str:
    payload = _pitch_payload(prompt)
    start = payload.find("Transcript:")
    if start < 0:
        return payload.strip()
    body = payload[start + len("Transcript:") :]
    end = body.find("Ask amount")
    if end >= 0:
        body = body[:end]
    return body.strip()


def stub_complete(prompt: str, seed: int) -> str:
    """Deterministic canned completion for any pipeline prompt."""
    digest = hashlib.sha256(
        f"{seed}|{_pitch_payload(prompt)}".encode("utf-8")
    ).digest()

    if GRADE_OUTPUT_MARKER in prompt:
        transcript = _transcript_of(prompt)
        sheet: dict[str, dict[str, str]] = {}
        for i, factor in enumerate(ALL_FACTORS):
            if not transcript:
                grade = Grade.NA
            else:
                grade = _REAL_GRADES[digest[i] % len(_REAL_GRADES)]
            sheet[factor.key] = {
                "grade": grade.symbol,
                "rationale": f"Canned rationale for {factor.display_name.lower()}.",
            }
        body = json.dumps(sheet, indent=2)
        return (
            "Here is the factor-by-factor assessment.\n\n"
            "```json\n" + body + "\n```\n"
        )

    if RECOMMENDATION_MARKER in prompt:
        return (
            "To reach an A+ on this factor, present concrete evidence for each "
            "evaluation question and quantify the claims the pitch already makes. "
            f"(canned recommendation {digest[0]:02x}{digest[1]:02x})"
        )

    if prompt.startswith(BASELINE_PROMPT):
        verdict = "deal" if digest[0] % 2 == 0 else "no deal"
        return (
            "Evaluation: The pitch presents a plausible product with partial "
            "traction; the ask terms look "
            + ("reasonable" if verdict == "deal" else "stretched")
            + f" against the stated numbers. (canned evaluation {digest[2]:02x})\n"
            "Recommendation: Tighten the revenue narrative and name the channel "
            "partners before the next investor meeting.\n"
            f"Decision: {verdict}."
        )

    # Unknown prompt kind: echo a tagged acknowledgement, still deterministic.
    return f"(canned completion {digest[0]:02x}{digest[1]:02x})"


class StubBackend:
    """Offline deterministic backend; identical prompt -> identical output."""

    kind = "stub"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.grader_id = "stub"

    def complete(self, prompt: str) -> str:
        return stub_complete(prompt, self.seed)


class RemoteBackend:
    """Chat-completions-style HTTP backend with timeout and bounded retries.

    Request body: {"model", "temperature", "messages": [{"role", "content"}]}.
    The completion text is pulled from the response JSON at `response_path`
    (dot-separated keys, integers index arrays). Endpoint and bearer token
    default to the PITCHGATE_API_URL / PITCHGATE_API_KEY environment
    variables.
    """

    kind = "remote"

    def __init__(
        self,
        endpoint: str | None = None,
        model: str = "gpt-4",
        temperature: float = 0.0,
        timeout: float = 60.0,
        transport_retries: int = 2,
        response_path: str = "choices.0.message.content",
        api_key: str | None = None,
        session: requests.Session | None = None,
        backoff: float = 1.0,
    ):
        self.endpoint = endpoint or os.environ.get(API_URL_ENV)
        if not self.endpoint:
            raise BackendError(
                f"no endpoint configured; set {API_URL_ENV} or pass endpoint="
            )
        self.model = model
        self.temperature = temperature
        self.timeout = timeout
        self.transport_retries = transport_retries
        self.response_path = response_path
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self.session = session or requests.Session()
        self.backoff = backoff
        self.grader_id = model

    def _headers(self) -> dict:
        headers = {"Content-Type": "application/json"}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        return headers

    def _extract(self, payload: dict) -> str:
        node = payload
        for part in self.response_path.split("."):
            if isinstance(node, list):
                node = node[int(part)]
            else:
                node = node[part]
        if not isinstance(node, str):
            raise BackendError(
                f"completion at {self.response_path!r} is not text: {type(node)}"
            )
        return node

    def complete(self, prompt: str) -> str:
        body = {
            "model": self.model,
            "temperature": self.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        last_error: Exception | None = None
        for attempt in range(self.transport_retries + 1):
            if attempt:
                time.sleep(self.backoff * attempt)
            try:
                response = self.session.post(
                    self.endpoint,
                    json=body,
                    headers=self._headers(),
                    timeout=self.timeout,
                )
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code >= 500:
                last_error = BackendError(
                    f"server error {response.status_code}: {response.text[:200]}"
                )
                continue
            if response.status_code >= 400:
                raise BackendUnreachable(
                    f"request rejected ({response.status_code}): {response.text[:200]}"
                )
            try:
                return self._extract(response.json())
            except (KeyError, IndexError, ValueError) as exc:
                raise BackendError(f"malformed completion response: {exc}") from exc
        raise BackendUnreachable(
            f"backend unreachable after {self.transport_retries + 1} attempts: "
            f"{last_error}"
        )
