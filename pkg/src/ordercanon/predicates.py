"""Exact orientation predicates and the oracle abstraction.

Every algorithm in this package talks to geometry through an
:class:`OrientationOracle`.  Calling an oracle directly (``o(a, b, c)``) is
the unchecked fast path used internally and returns a plain int in
``{-1, 0, 1}``; :meth:`OrientationOracle.query` validates its arguments and
returns an :class:`Orientation`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Orientation",
    "OrderTypeError",
    "DegenerateError",
    "PointSet",
    "ChirotopeTable",
    "OrientationOracle",
    "PointOracle",
    "TableOracle",
    "View",
    "Minor",
    "orient",
    "sort_parity",
    "chirotope_from_points",
    "oracle_query",
    "make_view",
    "as_oracle",
    "ValidationReport",
    "validate_chirotope",
    "DEFAULT_GUARDS",
]


class OrderTypeError(ValueError):
    """Invalid input to an order type operation."""


class DegenerateError(OrderTypeError):
    """Input violates a non-degeneracy assumption (collinear/coplanar)."""


class Orientation(enum.IntEnum):
    MINUS = -1
    ZERO = 0
    PLUS = 1

    def __neg__(self) -> "Orientation":
        return Orientation(-int(self))

    @property
    def symbol(self) -> str:
        return "-0+"[int(self) + 1]

    @classmethod
    def from_symbol(cls, s: str) -> "Orientation":
        try:
            return cls("-0+".index(s) - 1)
        except ValueError:
            raise OrderTypeError(f"bad orientation symbol {s!r}") from None


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _det_sign(rows: List[List[int]]) -> int:
    # Bareiss fraction-free elimination; exact on Python ints
    m = [list(r) for r in rows]
    size = len(m)
    sgn = 1
    prev = 1
    for k in range(size - 1):
        if m[k][k] == 0:
            for i in range(k + 1, size):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sgn = -sgn
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, size):
            mi = m[i]
            mk = m[k]
            f = mi[k]
            for j in range(k + 1, size):
                mi[j] = (mi[j] * pivot - f * mk[j]) // prev
        prev = pivot
    return sgn * _sign(m[-1][-1])


def orient(points: Sequence[Sequence[int]]) -> Orientation:
    """Sign of det[(1, p_0), ..., (1, p_d)] for d+1 integer points in R^d.

    >>> orient([(0, 0), (1, 0), (0, 1)])
    <Orientation.PLUS: 1>
    """
    if not points:
        raise OrderTypeError("orient needs d+1 points")
    d = len(points[0])
    if d < 1 or len(points) != d + 1 or any(len(p) != d for p in points):
        raise OrderTypeError(
            f"orient needs {d + 1} points of dimension {d}, got "
            f"{[len(p) for p in points]}")
    return Orientation(_raw_orient(points))


def _raw_orient(points: Sequence[Sequence[int]]) -> int:
    if len(points) == 3:
        (ax, ay), (bx, by), (cx, cy) = points
        return _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
    p0 = points[0]
    # translate so the first point is the origin; reduces to a d x d det
    rows = [[x - y for x, y in zip(p, p0)] for p in points[1:]]
    return _det_sign(rows)


def sort_parity(t: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    """Sort a tuple of distinct labels, returning (sorted, sign of the sort)."""
    a = list(t)
    sgn = 1
    for i in range(1, len(a)):
        j = i
        while j > 0 and a[j - 1] > a[j]:
            a[j - 1], a[j] = a[j], a[j - 1]
            sgn = -sgn
            j -= 1
    return tuple(a), sgn


# materialization guards for chirotope_from_points, keyed by rank
DEFAULT_GUARDS = {3: 64, 4: 16}


@dataclass(frozen=True)
class PointSet:
    """n distinct integer points in R^d."""

    points: Tuple[Tuple[int, ...], ...]
    dim: int = field(default=0)

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        if not pts:
            raise OrderTypeError("empty point set")
        d = self.dim or len(pts[0])
        if d < 1:
            raise OrderTypeError("dimension must be >= 1")
        for i, p in enumerate(pts):
            if len(p) != d:
                raise OrderTypeError(f"point {i} has dimension {len(p)}, expected {d}")
        seen: Dict[Tuple[int, ...], int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise OrderTypeError(f"duplicate point: labels {seen[p]} and {i} at {p}")
            seen[p] = i
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", d)

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)


@dataclass
class ChirotopeTable:
    """Signs of all sorted rank-subsets of range(n)."""

    rank: int
    n: int
    signs: Dict[Tuple[int, ...], int]

    def __post_init__(self):
        if self.rank < 2:
            raise OrderTypeError("rank must be >= 2")
        if self.n < self.rank:
            raise OrderTypeError(f"need at least rank={self.rank} elements, got {self.n}")
        clean = {}
        for t in itertools.combinations(range(self.n), self.rank):
            if t not in self.signs:
                raise OrderTypeError(f"missing tuple {t}")
            clean[t] = int(self.signs[t])
            if clean[t] not in (-1, 0, 1):
                raise OrderTypeError(f"bad sign {self.signs[t]!r} for {t}")
        if len(self.signs) != len(clean):
            extra = next(k for k in self.signs if k not in clean)
            raise OrderTypeError(f"unexpected tuple {extra}")
        if not any(clean.values()):
            raise DegenerateError("chirotope is identically zero")
        self.signs = clean

    def __getitem__(self, t: Sequence[int]) -> Orientation:
        s, par = sort_parity(t)
        return Orientation(par * self.signs[s])


class OrientationOracle:
    """Answers orientation queries on (d+1)-tuples of labels in range(n).

    Subclasses implement ``__call__(*labels) -> int`` without argument
    checking. Instances are immutable after construction.
    """

    n: int
    dim: int

    def __call__(self, *labels: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def rank(self) -> int:
        return self.dim + 1

    def pivot(self, a: int):
        """Unchecked two-argument form of ``o(a, ., .)`` (rank 3)."""
        return lambda b, c: self(a, b, c)

    def coords(self, a: int) -> Optional[Tuple[int, ...]]:
        """Planar coordinates realizing this oracle, if known (used only as a sorting hint)."""
        return None

    def query(self, labels: Sequence[int]) -> Orientation:
        t = tuple(labels)
        if len(t) != self.dim + 1:
            raise OrderTypeError(f"expected {self.dim + 1} labels, got {len(t)}")
        for x in t:
            if not 0 <= x < self.n:
                raise OrderTypeError(f"label {x} out of range [0, {self.n})")
        if len(set(t)) != len(t):
            raise OrderTypeError(f"repeated label in {t}")
        return Orientation(self(*t))


class PointOracle(OrientationOracle):
    def __init__(self, points: PointSet):
        self.points = points
        self.n = points.n
        self.dim = points.dim
        self._pts = points.points

    def coords(self, a: int):
        return self._pts[a] if self.dim == 2 else None

    def pivot(self, a: int):
        if self.dim != 2:
            return super().pivot(a)
        p = self._pts
        ax, ay = p[a]

        def f(b, c):
            (bx, by), (cx, cy) = p[b], p[c]
            v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            return (v > 0) - (v < 0)
        return f

    def __call__(self, *labels):
        p = self._pts
        if len(labels) == 3:
            (ax, ay), (bx, by), (cx, cy) = p[labels[0]], p[labels[1]], p[labels[2]]
            v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
            return (v > 0) - (v < 0)
        return _raw_orient([p[i] for i in labels])


class TableOracle(OrientationOracle):
    def __init__(self, table: ChirotopeTable):
        self.table = table
        self.n = table.n
        self.dim = table.rank - 1
        self._signs = table.signs

    def __call__(self, *labels):
        if len(labels) == 3:
            a, b, c = labels
            # inline sort of three with parity
            s = 1
            if a > b:
                a, b = b, a
                s = -s
            if b > c:
                b, c = c, b
                s = -s
                if a > b:
                    a, b = b, a
                    s = -s
            return s * self._signs[(a, b, c)]
        t, s = sort_parity(labels)
        return s * self._signs[t]


class View(OrientationOracle):
    """``v(t) = (-1 if negate else 1) * base(perm(t))``."""

    def __init__(self, base: OrientationOracle, perm: Optional[Sequence[int]], negate: bool):
        self.base = base
        self.n = base.n
        self.dim = base.dim
        self.perm = tuple(perm) if perm is not None else tuple(range(base.n))
        self.negate = bool(negate)
        self._s = -1 if negate else 1

    def coords(self, a: int):
        c = self.base.coords(self.perm[a])
        # a mirror image realizes the negated oracle
        return None if c is None else ((-c[0], c[1]) if self.negate else c)

    def pivot(self, a: int):
        f, p = self.base.pivot(self.perm[a]), self.perm
        if self.negate:
            return lambda b, c: -f(p[b], p[c])
        return lambda b, c: f(p[b], p[c])

    def __call__(self, *labels):
        p = self.perm
        if len(labels) == 3:
            a, b, c = labels
            return self._s * self.base(p[a], p[b], p[c])
        return self._s * self.base(*[p[x] for x in labels])


class Minor(OrientationOracle):
    """Deletion to ``elements`` (relabelled 0..r-1), optionally contracted at ``q``.

    With ``q`` given the result has dimension ``base.dim - 1`` and
    ``minor(t) = base(elements[t_0], ..., elements[t_{d-1}], q)``.
    """

    def __init__(self, base: OrientationOracle, elements: Sequence[int], q: Optional[int] = None):
        self.base = base
        self.elements = tuple(elements)
        self.q = q
        self.n = len(self.elements)
        self.dim = base.dim - (1 if q is not None else 0)
        if q is not None and q in self.elements:
            raise OrderTypeError("contraction element must not be among the kept elements")

    def __call__(self, *labels):
        e = self.elements
        if self.q is None:
            return self.base(*[e[x] for x in labels])
        return self.base(*[e[x] for x in labels], self.q)


def as_oracle(obj) -> OrientationOracle:
    if isinstance(obj, OrientationOracle):
        return obj
    if isinstance(obj, PointSet):
        return PointOracle(obj)
    if isinstance(obj, ChirotopeTable):
        return TableOracle(obj)
    return PointOracle(PointSet(tuple(obj)))


def chirotope_from_points(P: PointSet, guard: Optional[int] = None) -> ChirotopeTable:
    r = P.dim + 1
    limit = guard if guard is not None else DEFAULT_GUARDS.get(r, 12)
    if P.n > limit:
        raise OrderTypeError(f"n={P.n} exceeds materialization guard {limit} for rank {r}")
    if P.n < r:
        raise OrderTypeError(f"need at least {r} points, got {P.n}")
    o = PointOracle(P)
    signs = {t: o(*t) for t in itertools.combinations(range(P.n), r)}
    return ChirotopeTable(r, P.n, signs)


def oracle_query(o: OrientationOracle, t: Sequence[int]) -> Orientation:
    return o.query(t)


def make_view(o: OrientationOracle, perm: Optional[Sequence[int]] = None,
              negate: bool = False) -> OrientationOracle:
    """Relabelled and/or negated view; nested views collapse into one."""
    if perm is not None:
        perm = tuple(perm)
        if len(perm) != o.n or sorted(perm) != list(range(o.n)):
            raise OrderTypeError("perm is not a bijection on range(n)")
    if isinstance(o, View):
        inner = o.perm
        composed = inner if perm is None else tuple(inner[x] for x in perm)
        return View(o.base, composed, o.negate ^ bool(negate))
    return View(o, perm, negate)


def find_duplicate_pair(o: OrientationOracle) -> Optional[Tuple[int, int]]:
    """Rank-3 only: labels e < f with o(e, f, x) == 0 for every other x."""
    if o.rank != 3:
        return None
    for e, f in itertools.combinations(range(o.n), 2):
        if all(o(e, f, x) == 0 for x in range(o.n) if x != e and x != f):
            return e, f
    return None


@dataclass
class ValidationReport:
    ok: bool
    reason: str = ""
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_chirotope(t: ChirotopeTable, exhaustive: bool = False,
                       exhaustive_limit: int = 10) -> ValidationReport:
    """Check non-zero, alternation of the lookup layer and, optionally, (B2').

    The exhaustive axiom check runs for rank 3 with ``n <= exhaustive_limit``.
    For ``x`` only the choice of the first element matters (swapping the
    remaining two negates both sides) and ``y`` may be taken sorted.
    """
    signs = t.signs
    if not any(signs.values()):
        return ValidationReport(False, "identically zero")
    subsets = list(itertools.combinations(range(t.n), t.rank))
    checked = subsets if len(subsets) <= 5000 else subsets[:: len(subsets) // 5000 + 1]
    for s in checked:
        base = signs[s]
        for p in itertools.permutations(s):
            _, par = sort_parity(p)
            if t[p] != par * base:
                return ValidationReport(False, "lookup layer not alternating", p)
    if t.rank == 3:
        dup = find_duplicate_pair(TableOracle(t))
        if dup is not None:
            return ValidationReport(False, "duplicate elements", dup)
    if not exhaustive:
        return ValidationReport(True, "cheap checks passed")
    if t.rank != 3 or t.n > exhaustive_limit:
        return ValidationReport(True, "cheap checks passed; exhaustive check skipped")
    chi = TableOracle(t)

    def c(a, b, e):
        if a == b or b == e or a == e:
            return 0
        return chi(a, b, e)

    for xs in subsets:
        if signs[xs] == 0:
            continue
        for k in range(3):
            x = (xs[k],) + tuple(v for j, v in enumerate(xs) if j != k)
            cx = c(*x)
            for y in subsets:
                cy = signs[y]
                if cy == 0:
                    continue
                target = cx * cy
                for i in range(3):
                    lhs1 = c(y[i], x[1], x[2])
                    yy = list(y)
                    yy[i] = x[0]
                    if lhs1 * c(*yy) == target:
                        break
                else:
                    return ValidationReport(False, "axiom B2' violated", (x, y))
    return ValidationReport(True, "exhaustive check passed")
