"""Artifact files shared between CLI stages.

Every artifact is either line-delimited JSON with a header line or a
binary file with its own header; all of them record the root seed, and
all writes go through a temp file + rename so readers never see a
partial artifact. No artifact embeds timestamps: re-running a stage
with unchanged inputs and seed must reproduce identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile


class StageError(Exception):
    """A stage cannot run; the message says what to run first."""


def derive_seed(root_seed: int, tag: str) -> int:
    """Stable sub-seed for one pipeline stage."""
    digest = hashlib.blake2b(
        tag.encode("utf-8"), key=str(root_seed).encode("ascii"), digest_size=8
    ).digest()
    return int.from_bytes(digest, "big") % (2**32)


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-artifact-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def atomic_write_bytes(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-artifact-")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_jsonl(path: str, artifact: str, seed: int, records: list[dict]) -> None:
    header = {"artifact": artifact, "version": 1, "seed": seed}
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(record, sort_keys=True) for record in records]
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_jsonl(path: str, expect_artifact: str | None = None) -> tuple[dict, list[dict]]:
    if not os.path.exists(path):
        raise StageError(f"missing artifact {path}")
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line for line in handle.read().splitlines() if line.strip()]
    if not lines:
        raise StageError(f"artifact {path} is empty")
    header = json.loads(lines[0])
    if expect_artifact is not None and header.get("artifact") != expect_artifact:
        raise StageError(
            f"{path} holds artifact {header.get('artifact')!r}, "
            f"expected {expect_artifact!r}"
        )
    return header, [json.loads(line) for line in lines[1:]]


def write_json(path: str, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def read_json(path: str) -> dict:
    if not os.path.exists(path):
        raise StageError(f"missing artifact {path}")
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def require(path: str, stage_to_run: str) -> str:
    if not os.path.exists(path):
        raise StageError(
            f"missing artifact {os.path.basename(path)}; "
            f"run the '{stage_to_run}' stage first"
        )
    return path
