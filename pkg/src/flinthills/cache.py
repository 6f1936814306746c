"""On-disk cache for continued-fraction expansions.

One text document per constant: a short header (constant, precision, term
count, checksum) followed by the terms.  The checksum covers the canonical
space-joined term string.  Entries computed at lower precision than requested
are ignored rather than trusted.  Single-writer, last-write-wins; concurrent
writers are not coordinated.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from pathlib import Path

from .contfrac import PartialQuotients
from .errors import CacheError

CACHE_ENV = "FLINTHILLS_CACHE_DIR"
DEFAULT_CACHE_DIR = ".diophantine-cache"
_MAGIC = "flinthills-cache 1"


@dataclass(frozen=True)
class CacheEntry:
    constant_id: str
    precision_digits: int
    term_count: int
    terms: tuple[int, ...]
    checksum: str


def cache_dir(directory=None) -> Path:
    if directory is not None:
        return Path(directory)
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE_DIR))


def _payload(terms) -> str:
    return " ".join(str(t) for t in terms)


def _digest(payload: str) -> str:
    return hashlib.sha256(payload.encode("ascii")).hexdigest()


def entry_path(constant_id: str, directory=None) -> Path:
    return cache_dir(directory) / f"{constant_id}.cfcache"


def write_entry(pq: PartialQuotients, directory=None) -> Path:
    """Persist an expansion; returns the file written."""
    path = entry_path(pq.constant_id, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = _payload(pq.terms)
    lines = [
        _MAGIC,
        f"constant: {pq.constant_id}",
        f"precision: {pq.source_precision}",
        f"terms: {len(pq.terms)}",
        f"checksum: {_digest(payload)}",
        payload,
    ]
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


def read_entry(constant_id: str, directory=None) -> CacheEntry | None:
    """Load and validate a cache entry; None when absent."""
    path = entry_path(constant_id, directory)
    if not path.exists():
        return None
    lines = path.read_text(encoding="ascii").splitlines()
    if len(lines) < 6 or lines[0] != _MAGIC:
        raise CacheError(f"{path}: not a cache file")
    header = {}
    for line in lines[1:5]:
        key, _, value = line.partition(":")
        header[key.strip()] = value.strip()
    try:
        precision = int(header["precision"])
        count = int(header["terms"])
        checksum = header["checksum"]
        terms = tuple(int(t) for t in " ".join(lines[5:]).split())
    except (KeyError, ValueError) as exc:
        raise CacheError(f"{path}: malformed header or payload") from exc
    if header.get("constant") != constant_id:
        raise CacheError(f"{path}: constant mismatch")
    if len(terms) != count:
        raise CacheError(f"{path}: term count {len(terms)} != declared {count}")
    if _digest(_payload(terms)) != checksum:
        raise CacheError(f"{path}: checksum mismatch")
    return CacheEntry(
        constant_id=constant_id,
        precision_digits=precision,
        term_count=count,
        terms=terms,
        checksum=checksum,
    )


def load_quotients(constant_id: str, min_terms: int, min_precision: int = 0, directory=None) -> PartialQuotients | None:
    """Cached quotients when fresh enough, else None (stale entries ignored)."""
    entry = read_entry(constant_id, directory)
    if entry is None:
        return None
    if entry.term_count < min_terms or entry.precision_digits < min_precision:
        return None
    return PartialQuotients(
        constant_id=constant_id,
        terms=entry.terms,
        source_precision=entry.precision_digits,
        exhausted=False,
    )
