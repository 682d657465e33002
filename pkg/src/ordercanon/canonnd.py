"""Recursive canonical forms for general-position point sets in dimension d >= 3.

A face-flag (v1, ..., vd) of the outer hull induces a labeling pi_phi: the
flag itself, then the remaining points in the order a hyperplane rotating
about aff(v1..v_{d-1}) meets them, starting from the facet.  For every layer
and every point q of it, the contraction at q of the points at or below that
layer is canonicalized one dimension lower; its canonical labeling is read in
pi_phi positions.  The canonical form is the smallest such stream over all
flags.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .canon2d import canonical_form_2d, decode_canonical_2d, verify_witness
from .predicates import (
    DegenerateError,
    Minor,
    OrderTypeError,
    Orientation,
    OrientationOracle,
    make_view,
    sort_parity,
)

__all__ = [
    "LayersD",
    "HullFacetsD",
    "NdCanonicalForm",
    "NdIsoResult",
    "check_general_position",
    "extreme_points_d",
    "convex_layers_nd",
    "face_flags_d",
    "flag_labeling",
    "otr_nd",
    "canonical_form_nd",
    "decode_nd",
    "isomorphic_nd",
]


def check_general_position(o: OrientationOracle, subset: Optional[Sequence[int]] = None) -> None:
    pts = list(range(o.n)) if subset is None else list(subset)
    for t in itertools.combinations(pts, o.rank):
        if o(*t) == 0:
            raise DegenerateError(f"labels {t} are affinely dependent")


def extreme_points_d(o: OrientationOracle, subset: Sequence[int]) -> List[int]:
    """Points of ``subset`` outside every closed simplex spanned by d+1 others.

    Flat simplices are skipped; for a full-dimensional subset a point in the
    hull of the others always lies in some full-dimensional closed simplex.
    """
    pts = sorted(set(subset))
    r = o.rank
    if len(pts) <= r:
        return pts
    inside = set()
    for S in itertools.combinations(pts, r):
        sig = o(*S)
        if sig == 0:
            continue
        for p in pts:
            if p in S or p in inside:
                continue
            if all(o(*(S[:k] + (p,) + S[k + 1:])) != -sig for k in range(r)):
                inside.add(p)
    return [p for p in pts if p not in inside]


@dataclass
class LayersD:
    layers: List[List[int]]
    layer_of: Dict[int, int]

    @property
    def m(self) -> int:
        return len(self.layers)


def convex_layers_nd(o: OrientationOracle) -> LayersD:
    """Peel extreme points; fewer than d+1 leftover points form the last layer."""
    remaining = list(range(o.n))
    layers: List[List[int]] = []
    while len(remaining) > o.rank:
        ext = extreme_points_d(o, remaining)
        layers.append(ext)
        drop = set(ext)
        remaining = [x for x in remaining if x not in drop]
    if remaining:
        layers.append(remaining)
    return LayersD(layers, {x: i for i, c in enumerate(layers) for x in c})


@dataclass
class HullFacetsD:
    facets: List[Tuple[int, ...]]
    flags: List[Tuple[int, ...]]


def face_flags_d(o: OrientationOracle, layers: Optional[LayersD] = None) -> HullFacetsD:
    d = o.dim
    pts = list(range(o.n))
    hull = layers.layers[0] if layers is not None else extreme_points_d(o, pts)
    facets = []
    for F in itertools.combinations(hull, d):
        signs = {o(*F, w) for w in pts if w not in F}
        if 1 in signs and -1 in signs:
            continue
        if 0 in signs:
            raise DegenerateError(f"hull face through {F} is not a simplex")
        facets.append(F)
    flags = [f for F in facets for f in itertools.permutations(F)]
    return HullFacetsD(facets, flags)


def flag_labeling(o: OrientationOracle, flag: Sequence[int],
                  elements: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """pi_phi: the flag, then the other points in rotational sweep order."""
    flag = tuple(flag)
    d = o.dim
    if len(flag) != d:
        raise OrderTypeError(f"a flag has {d} labels, got {len(flag)}")
    pool = range(o.n) if elements is None else elements
    rest = [w for w in pool if w not in flag]
    if not rest:
        return flag
    ridge = flag[:-1]
    sigma = o(*ridge, flag[-1], rest[0])
    # all points lie on one side of the facet, so "before" is a total order
    before = {w: sum(1 for v in rest if v != w and o(*ridge, w, v) == sigma) for w in rest}
    rest.sort(key=lambda w: -before[w])
    return flag + tuple(rest)


@dataclass
class _Sub:
    text: str
    psi: List[Tuple[int, ...]]  # labelings in global labels
    trivial: bool


@dataclass
class NdCanonicalForm:
    canonical_string: str
    psi: List[Tuple[int, ...]]
    automorphisms: List[Tuple[int, ...]]
    n: int
    d: int
    group_order: int = 0

    def __post_init__(self):
        if not self.group_order:
            self.group_order = len(self.automorphisms)

    @property
    def labeling(self) -> Tuple[int, ...]:
        return self.psi[0]


def _sub_form(o: OrientationOracle, elements: List[int], q: int) -> _Sub:
    r = len(elements)
    if r < o.dim:
        return _Sub(f"TRIVIAL {r}", [], True)
    minor = Minor(o, elements, q)
    f = canonical_form_nd(minor)
    return _Sub(f.canonical_string, [tuple(elements[x] for x in rho) for rho in f.psi], False)


def _subforms(o: OrientationOracle, layers: LayersD) -> Dict[int, _Sub]:
    out = {}
    for i, c in enumerate(layers.layers):
        deeper = [x for cc in layers.layers[i:] for x in cc]
        for q in c:
            out[q] = _sub_form(o, [x for x in deeper if x != q], q)
    return out


def otr_nd(o: OrientationOracle, pi: Sequence[int], layers: Optional[LayersD] = None,
           _subs: Optional[Dict[int, _Sub]] = None, _rank: Optional[Dict[str, int]] = None):
    """Entry stream for labeling ``pi``: per point, its sub-labeling in pi positions and sub-string.

    Returns ``(key, entries)`` where ``key`` is the comparison key (sub-strings
    replaced by their rank) and ``entries`` is the list of
    ``(positions, sub_string)``.
    """
    layers = layers or convex_layers_nd(o)
    subs = _subs if _subs is not None else _subforms(o, layers)
    rank = _rank if _rank is not None else {s: k for k, s in enumerate(sorted({v.text for v in subs.values()}))}
    pos = {x: k + 1 for k, x in enumerate(pi)}
    key = []
    entries = []
    for c in layers.layers:
        for q in sorted(c, key=pos.__getitem__):
            sub = subs[q]
            if sub.trivial:
                deeper = [x for cc in layers.layers[layers.layer_of[q]:] for x in cc if x != q]
                best = tuple(sorted(pos[x] for x in deeper))
            else:
                best = min(tuple(pos[x] for x in rho) for rho in sub.psi)
            key.append((best, rank[sub.text]))
            entries.append((best, sub.text))
    return tuple(key), entries


def _render(d: int, n: int, entries) -> str:
    body = " ; ".join(" ".join([*map(str, p), "[", s, "]"]) for p, s in entries)
    return f"OTD d={d} n={n} | {body}"


def _automorphisms(psi: Sequence[Sequence[int]]) -> List[Tuple[int, ...]]:
    star = psi[0]
    inv = {v: i for i, v in enumerate(star)}
    return sorted(tuple(rho[inv[x]] for x in range(len(star))) for rho in psi)


def canonical_form_nd(o: OrientationOracle, d: Optional[int] = None) -> NdCanonicalForm:
    d = o.dim if d is None else d
    if d != o.dim:
        raise OrderTypeError(f"oracle has dimension {o.dim}, not {d}")
    n = o.n
    if d == 2:
        f = canonical_form_2d(o)
        return NdCanonicalForm(f.canonical_string, [r.order for r in f.psi],
                               f.automorphisms, n, 2, f.group_order)
    if d < 2:
        raise OrderTypeError("dimension must be at least 2")
    if n <= d:
        raise OrderTypeError(f"need more than d={d} points, got {n}")
    check_general_position(o)
    layers = convex_layers_nd(o)
    hull = face_flags_d(o, layers)
    subs = _subforms(o, layers)
    rank = {s: k for k, s in enumerate(sorted({v.text for v in subs.values()}))}
    best_key = None
    best: List[Tuple[Tuple[int, ...], list]] = []
    for flag in hull.flags:
        pi = flag_labeling(o, flag)
        key, entries = otr_nd(o, pi, layers, subs, rank)
        if best_key is None or key < best_key:
            best_key, best = key, [(pi, entries)]
        elif key == best_key:
            best.append((pi, entries))
    psi = [pi for pi, _ in best]
    return NdCanonicalForm(_render(d, n, best[0][1]), psi, _automorphisms(psi), n, d)


def _split_top(body: str) -> List[Tuple[Tuple[int, ...], str]]:
    """Top-level entries ``positions [ sub ]`` separated by ';'."""
    words = body.split()
    entries = []
    i = 0
    while i < len(words):
        nums = []
        while words[i] != "[":
            nums.append(int(words[i]))
            i += 1
        depth, j = 1, i + 1
        while depth:
            if words[j] == "[":
                depth += 1
            elif words[j] == "]":
                depth -= 1
            j += 1
        entries.append((tuple(nums), " ".join(words[i + 1:j - 1])))
        if j < len(words) and words[j] != ";":
            raise OrderTypeError(f"expected ';' after entry, got {words[j]!r}")
        i = j + 1
    return entries


def decode_nd(text: str, t: Sequence[int]) -> Orientation:
    """Orientation of 1-based canonical labels ``t`` encoded by an ``OTD`` string."""
    if text.startswith("OT2"):
        return decode_canonical_2d(text, t)
    head, sep, body = text.partition(" | ")
    words = head.split()
    if not sep or len(words) != 3 or words[0] != "OTD":
        raise OrderTypeError(f"not an OTD canonical string: {head!r}")
    d = int(words[1].removeprefix("d="))
    n = int(words[2].removeprefix("n="))
    t = tuple(t)
    if len(t) != d + 1 or len(set(t)) != d + 1 or not all(1 <= x <= n for x in t):
        raise OrderTypeError(f"need {d + 1} distinct labels in [1, {n}], got {t}")
    entries = _split_top(body)
    # recover the point of each entry: E_1 is everything, later E_i shrink
    owner: Dict[int, int] = {}
    E = set(range(1, n + 1))
    k = 0
    while k < len(entries):
        size = len(entries[k][0])
        layer = []
        while k < len(entries) and len(entries[k][0]) == size:
            (q,) = E - set(entries[k][0])
            owner[q] = k
            layer.append(q)
            k += 1
        E -= set(layer)
    q = min(t, key=owner.__getitem__)
    rest = tuple(x for x in t if x != q)
    positions, sub = entries[owner[q]]
    local = {x: i + 1 for i, x in enumerate(positions)}
    val = decode_nd(sub, [local[x] for x in rest])
    _, p1 = sort_parity(t)
    _, p2 = sort_parity(rest + (q,))
    return Orientation(p1 * p2 * int(val))


@dataclass
class NdIsoResult:
    same: bool
    witness: Optional[Tuple[int, ...]] = None
    reflected: bool = False

    def __bool__(self) -> bool:
        return self.same


def isomorphic_nd(a: OrientationOracle, b: OrientationOracle, d: Optional[int] = None,
                  allow_reflection: bool = False) -> NdIsoResult:
    if a.n != b.n or a.dim != b.dim:
        return NdIsoResult(False)
    fa = canonical_form_nd(a, d)
    candidates = [(b, False)]
    if allow_reflection:
        candidates.append((make_view(b, None, True), True))
    for bb, neg in candidates:
        fb = canonical_form_nd(bb, d)
        if fb.canonical_string != fa.canonical_string:
            continue
        inv = {v: i for i, v in enumerate(fa.labeling)}
        pi = tuple(fb.labeling[inv[x]] for x in range(a.n))
        if not verify_witness(a, b, pi, negate=neg, exhaustive_limit=8):
            raise AssertionError("canonical strings agree but the witness fails verification")
        return NdIsoResult(True, pi, neg)
    return NdIsoResult(False)
