"""Newform data ingestion: fetch level-6 newspaces from the LMFDB over
HTTP, or import committed fixture files, and persist everything in a local
JSON cache so downstream code (and the test suite) runs offline."""

import json
import os
import tempfile
import time
from dataclasses import dataclass
from fractions import Fraction

from .newforms import NewformRecord, validate_record

SCHEMA_VERSION = 1
LEVEL = 6

_ENV_CACHE_DIR = "PARTCONG_CACHE_DIR"


def default_cache_dir():
    env = os.environ.get(_ENV_CACHE_DIR)
    if env:
        return env
    base = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return os.path.join(base, "partcong", "newforms")


@dataclass(frozen=True)
class CacheEntry:
    record: NewformRecord
    source: str
    fetched_at: str
    schema: int = SCHEMA_VERSION


class DataUnavailable(Exception):
    """The requested newspace is not available from the source/cache."""


class SchemaMismatch(Exception):
    """A cache or fixture file does not match the expected schema."""


# ---------------------------------------------------------------------------
# (de)serialization


def entry_to_json(entry):
    rec = entry.record
    return {
        "schema": entry.schema,
        "label": rec.label,
        "level": rec.level,
        "weight": rec.weight,
        "al_signs": {"2": rec.al_signs[0], "3": rec.al_signs[1]},
        "field_poly": list(rec.field_poly),
        "an": [[_fraction_str(c) for c in vec] for vec in rec.an],
        "source": entry.source,
        "fetched_at": entry.fetched_at,
    }


def _fraction_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def entry_from_json(doc, validate=True):
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_VERSION:
        raise SchemaMismatch(
            f"expected schema {SCHEMA_VERSION}, got {doc.get('schema')!r}")
    try:
        al = doc["al_signs"]
        rec = NewformRecord(
            label=doc["label"],
            level=int(doc["level"]),
            weight=int(doc["weight"]),
            al_signs=(int(al["2"]), int(al["3"])),
            field_poly=tuple(int(c) for c in doc["field_poly"]),
            an=tuple(tuple(Fraction(c) for c in vec) for vec in doc["an"]),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaMismatch(f"malformed cache entry: {exc}") from exc
    if validate:
        try:
            validate_record(rec)
        except ValueError as exc:
            raise ValueError(f"{rec.label}: {exc}") from exc
    return CacheEntry(record=rec, source=doc.get("source", "unknown"),
                      fetched_at=doc.get("fetched_at", ""),
                      schema=doc["schema"])


# ---------------------------------------------------------------------------
# sources: one interface, two implementations


class FixtureSource:
    """Reads committed fixture files (one JSON document per newform)."""

    def __init__(self, directory):
        self.directory = directory

    def newspace(self, weight):
        out = []
        if not os.path.isdir(self.directory):
            raise DataUnavailable(f"fixture directory missing: {self.directory}")
        for name in sorted(os.listdir(self.directory)):
            if not name.endswith(".json"):
                continue
            parts = name[:-5].split(".")
            if len(parts) == 4 and parts[0] == str(LEVEL) and parts[1] == str(weight):
                with open(os.path.join(self.directory, name)) as fh:
                    out.append(entry_from_json(json.load(fh)))
        if not out:
            raise DataUnavailable(
                f"no fixtures for level {LEVEL} weight {weight} in {self.directory}")
        return out


class HTTPSource:
    """Fetches newform data from the LMFDB REST API."""

    def __init__(self, base_url="https://www.lmfdb.org/api", timeout=30):
        self.base_url = base_url
        self.timeout = timeout

    def newspace(self, weight):
        import requests

        try:
            resp = requests.get(
                f"{self.base_url}/mf_newforms/",
                params={
                    "level": LEVEL,
                    "weight": weight,
                    "char_order": 1,
                    "_format": "json",
                    "_fields": ",".join([
                        "label", "level", "weight", "atkin_lehner_eigenvals",
                        "field_poly", "qexp",
                    ]),
                },
                timeout=self.timeout,
            )
            resp.raise_for_status()
            data = resp.json()
        except requests.RequestException as exc:
            raise ConnectionError(f"LMFDB fetch failed: {exc}") from exc
        rows = data.get("data", [])
        if not rows:
            raise DataUnavailable(
                f"LMFDB has no newforms for level {LEVEL} weight {weight}")
        fetched_at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
        out = []
        for row in rows:
            al = dict()
            for p, sign in row.get("atkin_lehner_eigenvals", []):
                al[int(p)] = int(sign)
            field_poly = row.get("field_poly") or [0, 1]
            an = row.get("qexp")
            if an is None:
                raise DataUnavailable(
                    f"{row.get('label')}: LMFDB row lacks eigenvalue data")
            doc = {
                "schema": SCHEMA_VERSION,
                "label": row["label"],
                "level": row["level"],
                "weight": row["weight"],
                "al_signs": {"2": al.get(2), "3": al.get(3)},
                "field_poly": field_poly,
                "an": an,
                "source": f"{self.base_url}/mf_newforms",
                "fetched_at": fetched_at,
            }
            out.append(entry_from_json(doc))
        return out


# ---------------------------------------------------------------------------
# cache + public operations


def _cache_path(cache_dir, label):
    return os.path.join(cache_dir, f"{label}.json")


def _atomic_write(path, doc):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path), suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(doc, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def persist(entries, cache_dir=None):
    cache_dir = cache_dir or default_cache_dir()
    for entry in entries:
        path = _cache_path(cache_dir, entry.record.label)
        doc = entry_to_json(entry)
        if os.path.exists(path):
            with open(path) as fh:
                old = json.load(fh)
            stripped = {k: v for k, v in old.items() if k != "fetched_at"}
            fresh = {k: v for k, v in doc.items() if k != "fetched_at"}
            if stripped != fresh:
                raise ValueError(
                    f"cache drift for {entry.record.label}: refusing to overwrite")
            continue
        _atomic_write(path, doc)
    return cache_dir


def fetch_newspace(weight, signs=None, source=None, cache_dir=None):
    """Entries for the level-6 weight-`weight` newspace, from the cache when
    warm, otherwise from `source` (HTTP by default); fetched entries are
    persisted.  `signs` filters on (eps2, eps3)."""
    cache_dir = cache_dir or default_cache_dir()
    try:
        entries = _load_cache_entries(weight, cache_dir)
    except DataUnavailable:
        src = source or HTTPSource()
        entries = src.newspace(weight)
        persist(entries, cache_dir)
    if signs is not None:
        entries = [e for e in entries if e.record.al_signs == tuple(signs)]
    return entries


def _load_cache_entries(weight, cache_dir):
    if not os.path.isdir(cache_dir):
        raise DataUnavailable(f"cache directory missing: {cache_dir}")
    return FixtureSource(cache_dir).newspace(weight)


def load_cached(weight, signs=None, cache_dir=None):
    """Validated records from the local cache only (no network)."""
    entries = _load_cache_entries(weight, cache_dir or default_cache_dir())
    if signs is not None:
        entries = [e for e in entries if e.record.al_signs == tuple(signs)]
    return [e.record for e in entries]


def import_fixture(path):
    """Validated records from one fixture file or a directory of them."""
    if os.path.isdir(path):
        out = []
        for name in sorted(os.listdir(path)):
            if name.endswith(".json"):
                out.extend(import_fixture(os.path.join(path, name)))
        return out
    with open(path) as fh:
        doc = json.load(fh)
    return [entry_from_json(doc).record]
