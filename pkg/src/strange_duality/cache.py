"""Persistent coefficient cache (JSON).

The cache is an optimization only: a missing, unreadable or wrong-version
file is ignored with a warning and never changes results.
"""

from __future__ import annotations

import json
import logging
import os
from collections.abc import MutableMapping
from pathlib import Path
from typing import Iterator

log = logging.getLogger(__name__)

CACHE_VERSION = 1
CACHE_ENV = "STRANGE_DUALITY_CACHE"


class CoefficientCache(MutableMapping):
    """Map from canonical key strings to integers."""

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self.entries: dict[str, int] = {}
        self.dirty = False
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        try:
            data = json.loads(self.path.read_text())
            if data.get("version") != CACHE_VERSION:
                raise ValueError(f"cache version {data.get('version')!r} != {CACHE_VERSION}")
            self.entries = {str(k): int(v) for k, v in data["entries"].items()}
        except (OSError, ValueError, KeyError, TypeError, AttributeError) as exc:
            log.warning("ignoring cache file %s: %s", self.path, exc)
            self.entries = {}

    def save(self) -> None:
        if self.path is None or not self.dirty:
            return
        payload = {
            "version": CACHE_VERSION,
            "entries": {k: str(v) for k, v in sorted(self.entries.items())},
        }
        tmp = self.path.with_name(self.path.name + ".tmp")
        tmp.write_text(json.dumps(payload, indent=1) + "\n")
        tmp.replace(self.path)
        self.dirty = False

    def __getitem__(self, key: str) -> int:
        return self.entries[key]

    def __setitem__(self, key: str, value: int) -> None:
        if self.entries.get(key) != value:
            self.entries[key] = int(value)
            self.dirty = True

    def __delitem__(self, key: str) -> None:
        del self.entries[key]
        self.dirty = True

    def __iter__(self) -> Iterator[str]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def open_cache(path: str | None) -> CoefficientCache | None:
    """Cache from an explicit path, else from the environment, else none."""
    path = path or os.environ.get(CACHE_ENV)
    return CoefficientCache(path) if path else None
