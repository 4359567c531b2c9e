"""
Result Cache Module
Content-addressed JSON persistence for expensive results (hulls, bases,
state polytopes), verified by a payload hash on every load.
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Callable, Optional

from app.config import settings
from app.exceptions import CacheCorruptionError

logger = logging.getLogger(__name__)


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def payload_digest(payload: Any) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


class ResultCache:
    """JSON cache keyed by strings such as "state-polytope/star/3/alg35"."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or settings.cache_dir)

    def path_for(self, key: str) -> Path:
        return self.directory / f"{hashlib.sha256(key.encode('utf-8')).hexdigest()}.json"

    def store(self, key: str, payload: Any) -> Path:
        """
        Write a payload under a key.

        Args:
            key: Cache key
            payload: JSON-serializable value

        Returns:
            Path of the written entry
        """
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(key)
        entry = {"key": key, "sha256": payload_digest(payload), "payload": payload}
        path.write_text(canonical_json(entry), encoding="utf-8")
        logger.debug(f"Cached {key} at {path}")
        return path

    def _read(self, key: str) -> Any:
        path = self.path_for(key)
        try:
            entry = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as e:
            raise CacheCorruptionError(f"Unreadable cache entry {path}: {e}")
        if not isinstance(entry, dict) or entry.get("key") != key or "payload" not in entry:
            raise CacheCorruptionError(f"Cache entry {path} does not belong to {key}")
        if payload_digest(entry["payload"]) != entry.get("sha256"):
            raise CacheCorruptionError(f"Payload hash mismatch in {path}")
        return entry["payload"]

    def load(self, key: str) -> Optional[Any]:
        """Return the cached payload, or None when missing or corrupt."""
        if not self.path_for(key).exists():
            return None
        try:
            return self._read(key)
        except CacheCorruptionError as e:
            logger.warning(f"Ignoring cache entry: {e}")
            return None

    def get_or_compute(self, key: str, compute: Callable[[], Any]) -> Any:
        cached = self.load(key)
        if cached is not None:
            logger.info(f"Cache hit for {key}")
            return cached
        payload = compute()
        self.store(key, payload)
        return payload
