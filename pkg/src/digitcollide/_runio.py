"""Reproducible-run plumbing for the CLI: canonical parameter hashes,
sidecar manifests, atomic checkpoints, and JSON/CSV record writers.

Primary output is byte-deterministic for fixed parameters and seed;
wall-clock timestamps live only in the sidecar manifest.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Optional

# parameters that never influence the produced records
_VOLATILE = {"out", "checkpoint", "threads", "stop_at", "func", "group", "command"}


def params_hash(params: dict) -> str:
    canon = {k: v for k, v in sorted(params.items()) if k not in _VOLATILE}
    blob = json.dumps(canon, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def write_manifest(out_path: str, command: str, params: dict,
                   started: str, code_version: str) -> None:
    manifest = {
        "command": command,
        "params": {k: v for k, v in sorted(params.items()) if k != "func"},
        "code_version": code_version,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "params_hash": params_hash(params),
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat()


class Checkpoint:
    """Resumable scan state: {params_hash, last_n, state}, written
    atomically.  Resume refuses a hash mismatch outright."""

    def __init__(self, path: str, phash: str):
        self.path = path
        self.phash = phash
        self.last_n: Optional[int] = None
        self.state: dict = {}

    def load(self) -> bool:
        if not os.path.exists(self.path):
            return False
        with open(self.path) as fh:
            obj = json.load(fh)
        if obj.get("params_hash") != self.phash:
            raise ValueError(
                "checkpoint parameter hash mismatch: refusing to resume "
                f"(checkpoint {obj.get('params_hash')!r}, run {self.phash!r})")
        self.last_n = obj["last_n"]
        self.state = obj.get("state", {})
        return True

    def save(self, last_n: int, state: Optional[dict] = None) -> None:
        obj = {"params_hash": self.phash, "last_n": last_n,
               "state": state if state is not None else {}}
        tmp = self.path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(obj, fh, sort_keys=True)
        os.replace(tmp, self.path)


@dataclass
class RecordWriter:
    """Streams record dicts as JSON lines or RFC-4180 CSV."""

    fmt: str
    fields: list
    stream: io.TextIOBase
    _csv: object = None
    _wrote_header: bool = False

    def __post_init__(self):
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"format must be 'json' or 'csv', got {self.fmt!r}")
        if self.fmt == "csv":
            self._csv = csv.writer(self.stream)

    def write(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps({f: record[f] for f in self.fields}))
            self.stream.write("\n")
        else:
            if not self._wrote_header:
                self._csv.writerow(self.fields)
                self._wrote_header = True
            self._csv.writerow([_csv_cell(record[f]) for f in self.fields])

    def mark_resumed(self) -> None:
        # header already emitted by the interrupted run
        self._wrote_header = True


def _csv_cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return value


def open_output(out: Optional[str], resume: bool):
    if out is None:
        return sys.stdout, False
    return open(out, "a" if resume else "w", newline=""), True
