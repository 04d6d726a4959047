"""On-disk cache of loom tables with a content checksum.

One JSON file per (kind, n, m, format version).  A file whose checksum does
not match its payload raises CacheCorrupt; it is never rebuilt silently.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .algebra import LoomTable, build_loom_table
from .errors import CacheCorrupt

FORMAT_VERSION = 1
ENV_VAR = "DYLOOM_CACHE"


def _digest(entries: list) -> str:
    blob = json.dumps(entries, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


class LoomTableCache:
    def __init__(self, root: str | os.PathLike, threads: int = 1):
        self.root = Path(root)
        self.threads = threads

    def path(self, n: int, m: int) -> Path:
        return self.root / f"loomtable_{n}_{m}_v{FORMAT_VERSION}.json"

    def load(self, n: int, m: int) -> LoomTable | None:
        p = self.path(n, m)
        if not p.exists():
            return None
        try:
            doc = json.loads(p.read_text())
            entries = doc["entries"]
            ok = (doc["kind"] == "loomtable" and doc["n"] == n and doc["m"] == m
                  and doc["version"] == FORMAT_VERSION and doc["sha256"] == _digest(entries))
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorrupt(f"{p}: unreadable cache file ({exc})") from None
        if not ok:
            raise CacheCorrupt(f"{p}: checksum or header mismatch")
        return {(tuple(ls), tuple(ts), tuple(g)): (pos, neg) for ls, ts, g, pos, neg in entries}

    def store(self, n: int, m: int, table: LoomTable) -> None:
        entries = [[list(ls), list(ts), list(g), pos, neg] for (ls, ts, g), (pos, neg) in table.items()]
        doc = {"kind": "loomtable", "n": n, "m": m, "version": FORMAT_VERSION,
               "sha256": _digest(entries), "entries": entries}
        self.root.mkdir(parents=True, exist_ok=True)
        tmp = self.path(n, m).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc, separators=(",", ":")))
        tmp.replace(self.path(n, m))

    def __call__(self, n: int, m: int) -> LoomTable:
        table = self.load(n, m)
        if table is None:
            table = build_loom_table(n, m, self.threads)
            self.store(n, m, table)
        return table
