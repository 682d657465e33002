"""Exhaustive reference oracle for tiny instances.

Every search here enumerates all n! relabelings; nothing is pruned.  The
encoding of an oracle under a permutation pi lists the signs of
``o(pi(t))`` over all sorted tuples t, ordered lexicographically, with the
sign order Zero < Minus < Plus.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .predicates import OrderTypeError, Orientation, OrientationOracle

__all__ = [
    "GuardError",
    "brute_guard",
    "flat_encoding",
    "brute_canonical",
    "brute_isomorphic",
    "brute_automorphisms",
    "grassmann_plucker_ok",
]

DEFAULT_GUARD = 8
_KEY_TO_ORIENT = (Orientation.ZERO, Orientation.MINUS, Orientation.PLUS)


class GuardError(OrderTypeError):
    """Instance too large for exhaustive search."""


def brute_guard() -> int:
    env = os.environ.get("ORDERCANON_GUARD_N")
    return int(env) if env else DEFAULT_GUARD


def _check(o: OrientationOracle, d: Optional[int]) -> int:
    if d is not None and d != o.dim:
        raise OrderTypeError(f"oracle has dimension {o.dim}, not {d}")
    g = brute_guard()
    if o.n > g:
        raise GuardError(f"n={o.n} exceeds the brute-force guard {g} (set ORDERCANON_GUARD_N)")
    return o.rank


def _dense(o: OrientationOracle) -> np.ndarray:
    """Sign table over all r-tuples of labels, as keys 0/1/2 (Zero/Minus/Plus)."""
    n, r = o.n, o.rank
    tab = np.zeros((n,) * r, dtype=np.int8)
    for t in itertools.permutations(range(n), r):
        v = o(*t)
        tab[t] = 0 if v == 0 else (1 if v < 0 else 2)
    return tab.reshape(-1)


def _images(n: int, r: int) -> Tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)
    subsets = np.array(list(itertools.combinations(range(n), r)), dtype=np.int64).reshape(-1, r)
    img = perms[:, subsets]  # (P, C, r)
    flat = np.zeros(img.shape[:2], dtype=np.int64)
    for k in range(r):
        flat = flat * n + img[:, :, k]
    return perms, flat


def _encodings(o: OrientationOracle) -> Tuple[np.ndarray, np.ndarray]:
    perms, flat = _images(o.n, o.rank)
    return perms, _dense(o)[flat]


def flat_encoding(o: OrientationOracle) -> Tuple[Orientation, ...]:
    """Signs of all sorted tuples in lexicographic order (identity labeling)."""
    return tuple(Orientation(o(*t)) for t in itertools.combinations(range(o.n), o.rank))


def _lex_min_rows(keys: np.ndarray) -> np.ndarray:
    cand = np.arange(keys.shape[0])
    for c in range(keys.shape[1]):
        col = keys[cand, c]
        cand = cand[col == col.min()]
    return cand


def brute_canonical(o: OrientationOracle, d: Optional[int] = None
                    ) -> Tuple[Tuple[Orientation, ...], List[Tuple[int, ...]]]:
    _check(o, d)
    perms, keys = _encodings(o)
    best = _lex_min_rows(keys)
    enc = tuple(_KEY_TO_ORIENT[k] for k in keys[best[0]])
    return enc, [tuple(int(x) for x in perms[i]) for i in best]


def brute_automorphisms(o: OrientationOracle, d: Optional[int] = None) -> List[Tuple[int, ...]]:
    _check(o, d)
    perms, keys = _encodings(o)
    ident = keys[0]  # permutations() starts with the identity
    hits = np.nonzero((keys == ident).all(axis=1))[0]
    return [tuple(int(x) for x in perms[i]) for i in hits]


@dataclass
class BruteIso:
    same: bool
    witness: Optional[Tuple[int, ...]] = None
    reflected: bool = False

    def __bool__(self) -> bool:
        return self.same


def brute_isomorphic(a: OrientationOracle, b: OrientationOracle, d: Optional[int] = None,
                     allow_reflection: bool = False) -> BruteIso:
    """First pi (lexicographic) with a(t) == b(pi(t)) for all t, or with -b when allowed."""
    if a.n != b.n or a.rank != b.rank:
        return BruteIso(False)
    _check(a, d)
    _check(b, d)
    ident = _dense(a)[_images(a.n, a.rank)[1][0]]
    perms, keys = _encodings(b)
    flips = [False, True] if allow_reflection else [False]
    for neg in flips:
        target = ident
        if neg:
            target = np.where(ident == 0, 0, 3 - ident).astype(ident.dtype)
        hits = np.nonzero((keys == target).all(axis=1))[0]
        if len(hits):
            return BruteIso(True, tuple(int(x) for x in perms[hits[0]]), neg)
    return BruteIso(False)


def grassmann_plucker_ok(o: OrientationOracle) -> bool:
    """Three-term Grassmann-Plucker relations for a uniform rank-3 sign map.

    For every a and distinct x1..x4 the three products
    o(a,x1,x2)o(a,x3,x4), -o(a,x1,x3)o(a,x2,x4), o(a,x1,x4)o(a,x2,x3)
    must contain both signs.  Independent of the (B2') check in predicates.
    """
    if o.rank != 3:
        raise OrderTypeError("three-term relations implemented for rank 3 only")
    n = o.n
    for a in range(n):
        rest = [x for x in range(n) if x != a]
        for x1, x2, x3, x4 in itertools.combinations(rest, 4):
            terms = (o(a, x1, x2) * o(a, x3, x4),
                     -o(a, x1, x3) * o(a, x2, x4),
                     o(a, x1, x4) * o(a, x2, x3))
            if 0 in terms:
                raise OrderTypeError("table is not uniform")
            if not (1 in terms and -1 in terms):
                return False
    return True
