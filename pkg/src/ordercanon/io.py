"""Text formats for point sets and chirotopes, and the dedup record store."""

from __future__ import annotations

import itertools
import math
import os
import random
import re
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .predicates import (
    ChirotopeTable,
    OrderTypeError,
    Orientation,
    PointOracle,
    PointSet,
    TableOracle,
    orient,
    validate_chirotope,
)

__all__ = [
    "FormatError",
    "parse_point_file",
    "parse_chirotope_file",
    "parse_points_text",
    "parse_chirotope_text",
    "format_points",
    "format_chirotope",
    "load_oracle",
    "DedupStore",
    "generate_points",
]

PathLike = Union[str, "os.PathLike[str]"]


class FormatError(OrderTypeError):
    def __init__(self, msg: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _lines(text: str) -> List[Tuple[int, List[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        words = raw.split()
        if words:
            out.append((no, words))
    return out


_INT = re.compile(r"[+-]?[0-9]+\Z")


def _int(word: str, line: int) -> int:
    if not _INT.match(word):
        raise FormatError(f"non-integer token {word!r}", line)
    return int(word)


def _header(lines, kind: str) -> Tuple[int, int, int]:
    if not lines:
        raise FormatError("empty file", 1)
    no, words = lines[0]
    if len(words) != 3 or words[0] != kind:
        raise FormatError(f"malformed header, expected '{kind} <int> <int>'", no)
    a, b = _int(words[1], no), _int(words[2], no)
    if a < 1 or b < 0:
        raise FormatError("malformed header, sizes must be positive", no)
    return no, a, b


def parse_points_text(text: str) -> PointSet:
    lines = _lines(text)
    hno, d, n = _header(lines, "points")
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else hno + 1)
        raise FormatError(f"wrong line count: header says {n} points, found {len(body)}", where)
    rows: List[Tuple[int, ...]] = []
    seen: Dict[Tuple[int, ...], int] = {}
    for no, words in body:
        if len(words) != d:
            raise FormatError(f"expected {d} coordinates, got {len(words)}", no)
        row = tuple(_int(w, no) for w in words)
        if row in seen:
            raise FormatError(f"repeated point {row} (first on line {seen[row]})", no)
        seen[row] = no
        rows.append(row)
    return PointSet(tuple(rows))


_SIGN = {"+": 1, "-": -1, "0": 0}


def parse_chirotope_text(text: str, validate: bool = True) -> ChirotopeTable:
    lines = _lines(text)
    hno, r, n = _header(lines, "chirotope")
    if n < r:
        raise FormatError(f"need at least {r} elements", hno)
    signs: Dict[Tuple[int, ...], int] = {}
    for no, words in lines[1:]:
        if len(words) != r + 1:
            raise FormatError(f"expected {r} indices and a sign", no)
        t = tuple(_int(w, no) for w in words[:r])
        if any(not 0 <= x < n for x in t):
            raise FormatError(f"index out of range [0, {n})", no)
        if any(a >= b for a, b in zip(t, t[1:])):
            raise FormatError("indices must be strictly increasing", no)
        if words[r] not in _SIGN:
            raise FormatError(f"bad sign {words[r]!r}", no)
        if t in signs:
            raise FormatError(f"duplicate tuple {t}", no)
        signs[t] = _SIGN[words[r]]
    for t in itertools.combinations(range(n), r):
        if t not in signs:
            raise FormatError(f"missing tuple {' '.join(map(str, t))}")
    table = ChirotopeTable(r, n, signs)
    rep = validate_chirotope(table) if validate else None
    if rep is not None and not rep:
        raise FormatError(f"invalid chirotope: {rep.reason} {rep.witness}")
    return table


def parse_point_file(path: PathLike) -> PointSet:
    with open(path) as fh:
        return parse_points_text(fh.read())


def parse_chirotope_file(path: PathLike, validate: bool = True) -> ChirotopeTable:
    with open(path) as fh:
        return parse_chirotope_text(fh.read(), validate)


def format_points(P: PointSet) -> str:
    rows = [f"points {P.dim} {P.n}"] + [" ".join(map(str, p)) for p in P.points]
    return "\n".join(rows) + "\n"


def format_chirotope(t: ChirotopeTable) -> str:
    rows = [f"chirotope {t.rank} {t.n}"]
    for s in itertools.combinations(range(t.n), t.rank):
        rows.append(" ".join(map(str, s)) + " " + Orientation(t.signs[s]).symbol)
    return "\n".join(rows) + "\n"


def load_oracle(path: PathLike):
    """Oracle for either file kind, chosen by the header keyword."""
    with open(path) as fh:
        text = fh.read()
    first = text.split(None, 1)[0] if text.strip() else ""
    if first == "points":
        return PointOracle(parse_points_text(text))
    if first == "chirotope":
        return TableOracle(parse_chirotope_text(text))
    raise FormatError("malformed header, expected 'points' or 'chirotope'", 1)


class DedupStore:
    """Append-only ``<id>\\t<canonical string>`` records grouped by string equality."""

    def __init__(self, path: PathLike):
        self.path = path
        self.records: List[Tuple[str, str]] = []
        if os.path.exists(path):
            with open(path) as fh:
                for no, raw in enumerate(fh, 1):
                    raw = raw.rstrip("\n")
                    if not raw:
                        continue
                    ident, sep, key = raw.partition("\t")
                    if not sep:
                        raise FormatError("record without a tab", no)
                    self.records.append((ident, key))
        self._seen = set(self.records)

    def add(self, ident: str, key: str) -> bool:
        """Append a record unless the identical record is already stored."""
        if "\t" in ident or "\n" in ident or "\n" in key:
            raise FormatError(f"id or key of {ident!r} contains a tab or newline")
        if (ident, key) in self._seen:
            return False
        with open(self.path, "a") as fh:
            fh.write(f"{ident}\t{key}\n")
        self.records.append((ident, key))
        self._seen.add((ident, key))
        return True

    def groups(self) -> List[List[str]]:
        """Ids per canonical string, ordered by first appearance."""
        by_key: Dict[str, List[str]] = {}
        for ident, key in self.records:
            ids = by_key.setdefault(key, [])
            if ident not in ids:
                ids.append(ident)
        return list(by_key.values())


def _general_position_ok(points: List[Tuple[int, ...]], new: Tuple[int, ...], d: int) -> bool:
    return all(orient(list(S) + [new]) != 0 for S in itertools.combinations(points, d))


def generate_points(n: int, d: int = 2, seed: int = 0, R: int = 100,
                    collinear_frac: float = 0.0, general_position: Optional[bool] = None,
                    max_tries: int = 100000) -> PointSet:
    """Distinct random integer points in [-R, R]^d.

    In the plane each point is, with probability ``collinear_frac``, placed
    on the line through two earlier points.  For d >= 3 points are rejected
    until the set is in general position (the default there).
    """
    rng = random.Random(seed)
    if general_position is None:
        general_position = d >= 3
    if (2 * R + 1) ** d < n:
        raise OrderTypeError(f"range {R} too small for {n} distinct points")
    pts: List[Tuple[int, ...]] = []
    seen = set()
    tries = 0
    while len(pts) < n:
        tries += 1
        if tries > max_tries:
            raise OrderTypeError("generator gave up; enlarge the range")
        p = None
        if d == 2 and len(pts) >= 2 and collinear_frac > 0 and rng.random() < collinear_frac:
            a, b = rng.sample(pts, 2)
            dx, dy = b[0] - a[0], b[1] - a[1]
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            lim = 2 * R // max(abs(dx), abs(dy), 1) + 1
            k = rng.randint(-lim, lim)
            cand = (a[0] + k * dx, a[1] + k * dy)
            if all(-R <= c <= R for c in cand):
                p = cand
        if p is None:
            p = tuple(rng.randint(-R, R) for _ in range(d))
        if p in seen:
            continue
        if general_position and len(pts) >= d and not _general_position_ok(pts, p, d):
            continue
        pts.append(p)
        seen.add(p)
    return PointSet(tuple(pts))
