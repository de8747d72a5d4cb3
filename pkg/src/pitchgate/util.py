"""Shared helpers: deterministic seed derivation, canonical JSON, digests."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any


def derive_seed(root: int, *parts: object) -> int:
    """Fan a root seed out to a named sub-stream.

    Every random decision in the pipeline pulls its seed through here so a
    single root seed fixes the whole run.
    """
    payload = repr((int(root),) + parts).encode("utf-8")
    return int.from_bytes(hashlib.sha256(payload).digest()[:8], "big")


def canonical_json(obj: Any) -> str:
    """Serialize with sorted keys and fixed separators for stable digests."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()
