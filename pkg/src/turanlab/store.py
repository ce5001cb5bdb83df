"""Append-only JSON-lines store for search records and derivation reports."""

from __future__ import annotations

import json
import os
from pathlib import Path

from .search import TuranRecord

DEFAULT_PATH = Path.home() / ".cache" / "turanlab" / "results.jsonl"


class DataIntegrityError(RuntimeError):
    """Two complete records under one key disagree."""


def default_store_path() -> Path:
    env = os.environ.get("TURANLAB_STORE")
    return Path(env) if env else DEFAULT_PATH


class ResultStore:
    """Records are only ever appended; the newest complete record per key wins lookups."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else default_store_path()
        self._records: dict[tuple, TuranRecord] = {}
        self._partial: dict[tuple, TuranRecord] = {}
        self.reports: list[dict] = []
        if self.path.exists():
            self._load()

    def _load(self) -> None:
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DataIntegrityError(f"{self.path}:{lineno}: unreadable line ({exc.msg})") from None
                kind = row.pop("kind", "turan")
                if kind == "turan":
                    self._index(TuranRecord.from_json(row), where=f"{self.path}:{lineno}")
                else:
                    self.reports.append(row)

    def _index(self, rec: TuranRecord, where: str = "") -> None:
        key = _key(rec)
        if rec.complete:
            old = self._records.get(key)
            if old is not None and (old.value != rec.value or old.extremal != rec.extremal):
                raise DataIntegrityError(
                    f"{where} conflicting complete records for {key}: {old.value} vs {rec.value}"
                )
            self._records[key] = rec
        else:
            self._partial[key] = rec

    def get(self, family: str, n: int, order: int = 1, connected: bool = False, required: str | None = None):
        return self._records.get((family, n, order, connected, required))

    def records(self) -> list[TuranRecord]:
        return list(self._records.values())

    def put(self, rec: TuranRecord) -> None:
        self._index(rec)
        self._append({"kind": "turan", **rec.to_json()})

    def put_report(self, report: dict) -> None:
        self.reports.append(report)
        self._append(report)

    def _append(self, row: dict) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(row, sort_keys=False) + "\n")


def _key(rec: TuranRecord) -> tuple:
    return (rec.family, rec.n, rec.order, rec.connected, rec.required)
