"""On-disk cache of computed Kerov polynomials.

One JSON document holds every entry, grouped by engine version and then by
``k``.  Each entry carries a checksum of its serialized polynomial; entries
that fail the checksum are ignored and recomputed.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .algebra import CumulantPoly, Family

ENGINE_VERSION = "kerov-engine-1"
ENV_VAR = "KEROV_CACHE"


def default_path() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "kerov" / "polynomials.json"


def _serialize(poly: CumulantPoly) -> str:
    return json.dumps(poly.to_json(), separators=(",", ":"), sort_keys=True)


def checksum(poly_json: str) -> str:
    return hashlib.sha256(poly_json.encode()).hexdigest()


class PolyCache:
    """Read-through cache mapping ``k`` to ``K_k``."""

    def __init__(self, path: str | os.PathLike | None = None, engine_version: str = ENGINE_VERSION):
        self.path = Path(path) if path is not None else default_path()
        self.engine_version = engine_version
        self._doc = self._load()
        self._dirty = False

    def _load(self) -> dict:
        try:
            with open(self.path) as fh:
                doc = json.load(fh)
        except (OSError, ValueError):
            return {"entries": {}}
        if not isinstance(doc, dict) or not isinstance(doc.get("entries"), dict):
            return {"entries": {}}
        return doc

    def _bucket(self) -> dict:
        return self._doc["entries"].setdefault(self.engine_version, {})

    def get(self, k: int) -> CumulantPoly | None:
        entry = self._doc["entries"].get(self.engine_version, {}).get(str(k))
        if not entry:
            return None
        try:
            if entry["engine_version"] != self.engine_version or entry["k"] != k:
                return None
            if checksum(entry["poly"]) != entry["checksum"]:
                return None
            return CumulantPoly.from_json(Family.FREE, json.loads(entry["poly"]))
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, k: int, poly: CumulantPoly) -> None:
        text = _serialize(poly)
        self._bucket()[str(k)] = {
            "k": k,
            "poly": text,
            "engine_version": self.engine_version,
            "checksum": checksum(text),
        }
        self._dirty = True

    def save(self) -> None:
        if not self._dirty:
            return
        self.path.parent.mkdir(parents=True, exist_ok=True)
        tmp = self.path.with_suffix(self.path.suffix + ".tmp")
        with open(tmp, "w") as fh:
            json.dump(self._doc, fh, sort_keys=True, indent=1)
        os.replace(tmp, self.path)
        self._dirty = False


class NullCache:
    """Stand-in used with ``--no-cache``."""

    def get(self, k: int) -> None:
        return None

    def put(self, k: int, poly: CumulantPoly) -> None:
        pass

    def save(self) -> None:
        pass
