"""Optional content-addressed disk cache (--cache-dir).

Stores JSON blobs keyed by the sha256 of a canonical parameter string.
Files are immutable and safe to delete at any time.
"""

from __future__ import annotations

import hashlib
import json
import os

_cache_dir = None


def configure(path):
    global _cache_dir
    if path is None:
        _cache_dir = None
        return
    os.makedirs(path, exist_ok=True)
    _cache_dir = path


def enabled():
    return _cache_dir is not None


def _path(key):
    digest = hashlib.sha256(key.encode()).hexdigest()
    return os.path.join(_cache_dir, digest + ".json")


def get(key):
    if _cache_dir is None:
        return None
    p = _path(key)
    if not os.path.exists(p):
        return None
    with open(p) as fh:
        return json.load(fh)


def put(key, obj):
    if _cache_dir is None:
        return
    p = _path(key)
    tmp = p + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(obj, fh)
    os.replace(tmp, p)
