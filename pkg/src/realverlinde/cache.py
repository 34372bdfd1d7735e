"""On-disk cache of fusion tables.

One JSON file per (family, rank, level, schema version).  The file stores the
table payload together with a sha256 checksum of its canonical serialization;
a checksum mismatch or unreadable file is reported and treated as a miss.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from .fusion_ring import FusionTable
from .errors import InputError

SCHEMA_VERSION = 1
ENV_VAR = "REALVERLINDE_CACHE"

log = logging.getLogger(__name__)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def checksum(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "realverlinde"


@dataclass(frozen=True)
class CacheKey:
    family: str
    rank: int
    level: int
    schema_version: int = SCHEMA_VERSION

    @property
    def filename(self) -> str:
        return f"{self.family}{self.rank}_k{self.level}_v{self.schema_version}.json"

    def as_dict(self) -> dict:
        return {"family": self.family, "rank": self.rank, "level": self.level,
                "schema_version": self.schema_version}


class FusionCache:
    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def path(self, key: CacheKey) -> Path:
        return self.directory / key.filename

    def check(self, key: CacheKey) -> tuple[str, str]:
        """Status of a cache entry: ("missing"|"ok"|"corrupt"|"stale", detail)."""
        p = self.path(key)
        if not p.exists():
            return "missing", str(p)
        try:
            entry = json.loads(p.read_text(encoding="utf-8"))
            if entry.get("key", {}).get("schema_version") != SCHEMA_VERSION:
                return "stale", f"{p}: schema version {entry.get('key', {}).get('schema_version')}"
            if entry.get("key") != key.as_dict():
                return "corrupt", f"{p}: key does not match file name"
            if checksum(entry["payload"]) != entry.get("checksum"):
                return "corrupt", f"{p}: checksum mismatch"
        except (OSError, ValueError, KeyError, AttributeError) as exc:
            return "corrupt", f"{p}: {exc}"
        return "ok", str(p)

    def load(self, key: CacheKey) -> FusionTable | None:
        status, detail = self.check(key)
        if status == "missing":
            return None
        if status != "ok":
            log.warning("ignoring cache entry (%s): %s", status, detail)
            return None
        entry = json.loads(self.path(key).read_text(encoding="utf-8"))
        try:
            return FusionTable.from_json_dict(entry["payload"])
        except InputError as exc:
            log.warning("ignoring cache entry %s: %s", self.path(key), exc)
            return None

    def store(self, key: CacheKey, table: FusionTable) -> Path:
        payload = table.to_json_dict()
        entry = {"key": key.as_dict(), "checksum": checksum(payload), "payload": payload}
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(key)
        tmp = p.with_suffix(".tmp")
        tmp.write_text(canonical_json(entry), encoding="utf-8")
        tmp.replace(p)
        return p
