"""OEIS cross-validation (with offline fixtures) and parameter identification.

The b-file client resolves sequences in this order: local cache directory,
packaged fixtures, then (unless offline) one HTTPS GET whose response is
cached verbatim.  Verification maps b-file values onto triangle entries
through a per-sequence layout and reports the first mismatch, if any.

`identify` goes the other way: given a triangle prefix, it solves the
recurrence's defining linear system for the six coefficients exactly,
returning a particular tuple plus the nullspace directions (the
degeneracy families are exactly what makes the dimension positive).
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

import httpx
from filelock import FileLock

from .errors import (
    Infeasible,
    MalformedLine,
    MalformedResponse,
    NetworkError,
    NonConsecutiveIndex,
    NotInFixtures,
    PrefixTooShallow,
)
from .exact import Triangle, triangle
from .linalg import rank_of, solve_affine
from .params import ParamTuple
from .rationals import rat_str

_ANUM_RE = re.compile(r"^A\d{6}$")
DEFAULT_BASE_URL = "https://oeis.org"
CACHE_ENV_VAR = "GKP_CACHE_DIR"
DEFAULT_CACHE_DIR = ".oeis-cache"


@dataclass(frozen=True)
class OeisEntry:
    anum: str
    values: tuple
    source: str  # "network" | "fixture" | "cache"


@dataclass(frozen=True)
class TriangleLayout:
    """How a b-file's flat values map onto triangle entries, reading by rows.

    The first stored row is triangle row `row_offset`; within each row the
    entries cover k = k_offset .. n + k_end_offset.  Examples: the full
    triangle including the k = n column is (0, 0, 0); entries that start
    at row 1 and drop the always-zero k = 0 column are (1, 1, 0); entries
    that start at row 1 and drop the always-zero k = n column are (1, 0, -1).
    """

    row_offset: int = 0
    k_offset: int = 0
    k_end_offset: int = 0
    read_order: str = "by_rows"

    def cells(self, count: int):
        """Yield (n, k) for the first `count` stored values."""
        produced = 0
        n = self.row_offset
        while produced < count:
            for k in range(self.k_offset, n + self.k_end_offset + 1):
                if produced == count:
                    return
                yield n, k
                produced += 1
            n += 1


def parse_bfile(text: str) -> tuple:
    """Parse b-file lines 'index value' (comments '#' allowed) into values.

    Indices must be consecutive; the starting index is free.
    """
    values = []
    expect = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedLine(f"line {lineno}: {raw!r}")
        try:
            idx, val = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise MalformedLine(f"line {lineno}: {raw!r}") from exc
        if expect is not None and idx != expect:
            raise NonConsecutiveIndex(f"line {lineno}: expected index {expect}, got {idx}")
        expect = idx + 1
        values.append(val)
    if not values:
        raise MalformedLine("no data lines")
    return tuple(values)


def _bfile_name(anum: str) -> str:
    return f"b{anum[1:]}.txt"


def _fixture_text(anum: str) -> str | None:
    ref = resources.files("gkp") / "fixtures" / _bfile_name(anum)
    try:
        return ref.read_text()
    except FileNotFoundError:
        return None


def fixture_manifest() -> dict:
    """Packaged manifest: A-number -> {file, layout fields}."""
    ref = resources.files("gkp") / "fixtures" / "manifest.json"
    return json.loads(ref.read_text())


def layout_for(anum: str) -> TriangleLayout:
    """Layout from the packaged manifest; default (0, 0, 0) when unlisted."""
    entry = fixture_manifest().get(anum)
    if entry is None:
        return TriangleLayout()
    return TriangleLayout(
        row_offset=entry.get("row_offset", 0),
        k_offset=entry.get("k_offset", 0),
        k_end_offset=entry.get("k_end_offset", 0),
    )


def cache_dir_from_env(explicit: str | None = None) -> Path:
    if explicit:
        return Path(explicit)
    return Path(os.environ.get(CACHE_ENV_VAR, DEFAULT_CACHE_DIR))


def fetch(anum: str, cache_dir=None, offline: bool = False, base_url: str = DEFAULT_BASE_URL, client: "httpx.Client | None" = None) -> OeisEntry:
    """Return the b-file values for anum from cache, fixtures, or the network.

    Network access is a single GET of {base_url}/{anum}/b{digits}.txt; the
    response body is cached verbatim under a single-writer lock.
    """
    if not _ANUM_RE.match(anum or ""):
        raise ValueError(f"bad A-number: {anum!r}")
    cache = cache_dir_from_env(str(cache_dir) if cache_dir else None)
    cache_file = cache / _bfile_name(anum)
    if cache_file.is_file():
        return OeisEntry(anum, parse_bfile(cache_file.read_text()), "cache")
    fixture = _fixture_text(anum)
    if fixture is not None:
        return OeisEntry(anum, parse_bfile(fixture), "fixture")
    if offline:
        raise NotInFixtures(f"{anum} not cached and not in packaged fixtures (offline)")
    url = f"{base_url}/{anum}/{_bfile_name(anum)}"
    try:
        if client is None:
            resp = httpx.get(url, timeout=30.0, follow_redirects=True)
        else:
            resp = client.get(url)
        resp.raise_for_status()
        text = resp.text
    except httpx.HTTPError as exc:
        raise NetworkError(f"GET {url} failed: {exc}") from exc
    try:
        values = parse_bfile(text)
    except (MalformedLine, NonConsecutiveIndex) as exc:
        raise MalformedResponse(f"{url}: {exc}") from exc
    cache.mkdir(parents=True, exist_ok=True)
    with FileLock(str(cache / ".lock")):
        cache_file.write_text(text)
    return OeisEntry(anum, values, "network")


@dataclass(frozen=True)
class VerifyReport:
    anum: str
    matched: bool
    rows_checked: int
    entries_checked: int
    first_mismatch: dict | None
    note: str = ""

    def to_json_dict(self) -> dict:
        return {
            "anum": self.anum,
            "matched": self.matched,
            "rows_checked": self.rows_checked,
            "entries_checked": self.entries_checked,
            "first_mismatch": self.first_mismatch,
            "note": self.note,
        }


def verify_against(p: ParamTuple, entry: OeisEntry, layout: TriangleLayout, depth: int) -> VerifyReport:
    """Compare the triangle of p against the entry's values through row `depth`."""
    t = triangle(p, depth)
    checked = 0
    max_row = -1
    for (n, k), expected in zip(layout.cells(len(entry.values)), entry.values):
        if n > depth:
            break
        ours = t.value(n, k)
        if ours.denominator != 1:
            return VerifyReport(
                anum=entry.anum,
                matched=False,
                rows_checked=max(max_row, 0),
                entries_checked=checked,
                first_mismatch=None,
                note=f"triangle entry ({n},{k}) = {rat_str(ours)} is not an integer; OEIS comparison skipped",
            )
        if ours != expected:
            return VerifyReport(
                anum=entry.anum,
                matched=False,
                rows_checked=max_row,
                entries_checked=checked,
                first_mismatch={"n": n, "k": k, "expected": expected, "got": int(ours)},
            )
        checked += 1
        max_row = max(max_row, n)
    return VerifyReport(entry.anum, True, max_row, checked, None)


# ---------------------------------------------------------------------------
# Parameter identification from a triangle prefix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParamFamily:
    particular: ParamTuple
    nullspace_basis: tuple  # of 6-tuples of Fractions
    dim: int

    def member(self, weights) -> ParamTuple:
        vals = list(self.particular.as_tuple())
        for w, vec in zip(weights, self.nullspace_basis):
            vals = [v + Fraction(w) * b for v, b in zip(vals, vec)]
        return ParamTuple(*vals)

    def to_json_dict(self) -> dict:
        return {
            "particular": self.particular.to_strings(),
            "nullspace": [[rat_str(v) for v in vec] for vec in self.nullspace_basis],
            "dim": self.dim,
        }


def _equations(rows, upto: int) -> list:
    eqs = []
    for n in range(1, upto + 1):
        prev = rows[n - 1]
        for k in range(n + 1):
            left = prev[k] if k < n else Fraction(0)
            diag = prev[k - 1] if k >= 1 else Fraction(0)
            # unknowns (a, b, g, a', b', g')
            eqs.append([n * left, k * left, left, n * diag, k * diag, diag, rows[n][k]])
    return eqs


def identify(prefix) -> ParamFamily:
    """Fit the six coefficients to a triangle prefix (rows 0..N, N >= 2), exactly.

    Raises Infeasible when no tuple reproduces the prefix, and
    PrefixTooShallow when the system's rank is still growing at row N
    (more rows could pin down more directions, so the family returned
    from this prefix would not be stable).
    """
    rows = _as_rows(prefix)
    N = len(rows) - 1
    if N < 2:
        raise ValueError("need rows 0..N with N >= 2")
    if rows[0] != (Fraction(1),):
        raise Infeasible("row 0 must be [1]")
    for n, row in enumerate(rows):
        if len(row) != n + 1:
            raise ValueError(f"row {n} must have {n + 1} entries")
    full = _equations(rows, N)
    particular, basis, rank = solve_affine(full)
    if rank_of(_equations(rows, N - 1)) != rank:
        raise PrefixTooShallow(f"rank still growing at row {N}; supply more rows")
    return ParamFamily(
        particular=ParamTuple(*particular),
        nullspace_basis=tuple(tuple(v) for v in basis),
        dim=len(basis),
    )


def _as_rows(prefix) -> tuple:
    if isinstance(prefix, Triangle):
        return prefix.rows
    return tuple(tuple(Fraction(v) for v in row) for row in prefix)
