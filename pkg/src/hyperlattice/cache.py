"""On-disk store of computed polynomials.

One JSON file per result, named ``<kind>_<d>_<gamma>.json``, holding the
payload, a provenance record and a SHA-256 digest of the payload.  A process
takes an exclusive advisory lock on the directory for the duration of a run;
a second process fails immediately instead of waiting.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from pathlib import Path

from filelock import FileLock, Timeout

from .binomial_poly import BinomialPolynomial
from .lattice import Partition
from .mobius_chi import HEAVY_TYPES, HeavyTypeError
from .type_counts import lambda_poly

log = logging.getLogger(__name__)

__all__ = [
    "CACHE_ENV",
    "CacheError",
    "CacheCorruptionError",
    "CacheLockedError",
    "ResultCache",
    "CachedProvider",
    "default_cache_dir",
]

CACHE_ENV = "HYPERLATTICE_CACHE"
VERSION = "0.1.0"


class CacheError(RuntimeError):
    pass


class CacheCorruptionError(CacheError):
    pass


class CacheLockedError(CacheError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "hyperlattice"


def _canonical(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _gamma_tag(gamma) -> str:
    if gamma is None:
        return "top"
    gamma = Partition(gamma)
    return "-".join(map(str, gamma)) if gamma else "0"


class ResultCache:
    def __init__(self, directory: str | os.PathLike | None = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self._lock: FileLock | None = None

    def __enter__(self) -> ResultCache:
        self.acquire()
        return self

    def __exit__(self, *exc) -> None:
        self.release()

    def acquire(self) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        lock = FileLock(str(self.directory / ".lock"))
        try:
            lock.acquire(timeout=0)
        except Timeout:
            raise CacheLockedError(f"cache {self.directory} is in use by another process") from None
        self._lock = lock

    def release(self) -> None:
        if self._lock is not None:
            self._lock.release()
            self._lock = None

    def path(self, kind: str, d: int, gamma=None) -> Path:
        return self.directory / f"{kind}_{d}_{_gamma_tag(gamma)}.json"

    def get(self, kind: str, d: int, gamma=None) -> dict | None:
        """Payload stored for the key, or ``None``; raises on a digest mismatch."""
        p = self.path(kind, d, gamma)
        if not p.exists():
            return None
        try:
            entry = json.loads(p.read_text())
            payload = entry["value"]
            digest = entry["sha256"]
        except (ValueError, KeyError) as exc:
            raise CacheCorruptionError(f"{p}: unreadable cache entry ({exc})") from None
        if hashlib.sha256(_canonical(payload).encode()).hexdigest() != digest:
            raise CacheCorruptionError(f"{p}: checksum mismatch")
        return payload

    def put(self, kind: str, d: int, gamma, payload, **provenance) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        p = self.path(kind, d, gamma)
        entry = {
            "kind": kind,
            "key": {"d": d, "gamma": None if gamma is None else list(Partition(gamma))},
            "value": payload,
            "sha256": hashlib.sha256(_canonical(payload).encode()).hexdigest(),
            "provenance": {"version": VERSION, **provenance},
        }
        tmp = p.with_suffix(".tmp")
        tmp.write_text(json.dumps(entry, sort_keys=True, indent=1))
        os.replace(tmp, p)
        return p


class CachedProvider:
    """Type counts from the cache, computing and storing missing ones."""

    def __init__(self, cache: ResultCache | None, threads: int = 1, allow_heavy: bool = False,
                 checkpoint_dir: str | None = None):
        self.cache = cache
        self.threads = threads
        self.allow_heavy = allow_heavy
        self.checkpoint_dir = checkpoint_dir
        self._memo: dict[tuple[int, Partition], BinomialPolynomial] = {}
        self.point_counts: dict[tuple[int, Partition], int] = {}

    def __call__(self, d: int, gamma) -> BinomialPolynomial:
        gamma = Partition(gamma)
        key = (d, gamma)
        if key in self._memo:
            return self._memo[key]
        payload = self.cache.get("lambda", d, gamma) if self.cache else None
        if payload is not None:
            poly = BinomialPolynomial.from_dict(payload["lambda"])
            self.point_counts[key] = int(payload["point_count"])
        else:
            if key in HEAVY_TYPES and not self.allow_heavy:
                raise HeavyTypeError(d, gamma)
            ckpt = None
            if self.checkpoint_dir:
                os.makedirs(self.checkpoint_dir, exist_ok=True)
                ckpt = os.path.join(self.checkpoint_dir, f"lambda_{d}_{_gamma_tag(gamma)}.ckpt.json")
            t0 = time.perf_counter()
            res = lambda_poly(d, gamma, threads=self.threads, checkpoint=ckpt)
            poly = res.lam
            self.point_counts[key] = res.point_count
            if self.cache:
                self.cache.put("lambda", d, gamma, res.to_dict(), elapsed=round(time.perf_counter() - t0, 3),
                               point_count=res.point_count)
        self._memo[key] = poly
        return poly
