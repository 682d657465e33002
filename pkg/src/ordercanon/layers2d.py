"""Convex layers of planar order types, using orientation queries only.

Hull cycles are counterclockwise, include points lying on hull edges, and
are stored rotated so that they start at their lowest label.  An innermost
layer whose points are collinear (two or more of them) is stored as a chain
ordered along its line, starting at the endpoint with the lower label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from .predicates import DegenerateError, OrderTypeError, OrientationOracle

__all__ = [
    "CollinearError",
    "Cycle",
    "ConvexLayers",
    "between",
    "convex_hull_ccw",
    "convex_layers",
    "s_of",
    "s_candidates",
    "keypoints",
]


class CollinearError(DegenerateError):
    """All points of the input are collinear."""


class Cycle(tuple):
    """Tuple of labels; ``collinear`` marks a degenerate chain."""

    collinear: bool = False

    def __new__(cls, items, collinear: bool = False):
        self = super().__new__(cls, items)
        self.collinear = collinear
        return self


def between(o: OrientationOracle, a: int, x: int, b: int, w: int) -> bool:
    """True if x lies strictly between a and b on their common line.

    ``w`` is any witness with ``o(a, b, w) != 0``; x must be collinear with a, b.
    """
    s = o(w, a, b)
    return s != 0 and o(w, a, x) == s and o(w, x, b) == s


def _rotate_min(cyc: List[int]) -> List[int]:
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]


def _corner_hull(o: OrientationOracle, pts: Sequence[int]) -> Optional[List[int]]:
    a, b = pts[0], pts[1]
    c = next((x for x in pts[2:] if o(a, b, x) != 0), None)
    if c is None:
        return None
    hull = [a, b, c] if o(a, b, c) > 0 else [a, c, b]
    for x in pts:
        if x == a or x == b or x == c:
            continue
        h = len(hull)
        vis = []
        for i in range(h):
            u, v = hull[i], hull[(i + 1) % h]
            s = o(u, v, x)
            if s == 0:
                # on the edge's line: visible unless inside the segment
                vis.append(not between(o, u, x, v, hull[(i + 2) % h]))
            else:
                vis.append(s < 0)
        if not any(vis):
            continue
        start = next(i for i in range(h) if vis[i] and not vis[i - 1])
        end = start
        while vis[(end + 1) % h]:
            end = (end + 1) % h
        # drop vertices strictly inside the visible run, put x in their place
        keep = []
        i = (end + 1) % h
        while True:
            keep.append(hull[i])
            if i == start:
                break
            i = (i + 1) % h
        keep.append(x)
        hull = keep
    return hull


def _line_order(o: OrientationOracle, pts: Sequence[int], w: int) -> List[int]:
    # collinear points sorted by angle around an off-line witness
    return sorted(pts, key=cmp_to_key(lambda a, b: -o(w, a, b)))


def _find_witness(o: OrientationOracle, a: int, b: int,
                  pool: Sequence[int]) -> Optional[int]:
    for w in pool:
        if w != a and w != b and o(a, b, w) != 0:
            return w
    return None


def convex_hull_ccw(o: OrientationOracle, subset: Sequence[int]) -> Cycle:
    """Counterclockwise boundary cycle of ``subset``, edge-interior points included.

    A collinear subset yields a ``Cycle`` flagged ``collinear``, ordered
    along its line when some label of the oracle lies off that line.
    """
    pts = list(dict.fromkeys(subset))
    if not pts:
        raise OrderTypeError("empty subset")
    if len(pts) == 1:
        return Cycle(pts)
    corners = _corner_hull(o, pts) if len(pts) >= 3 else None
    if corners is None:
        w = _find_witness(o, pts[0], pts[1], range(o.n))
        chain = _line_order(o, pts, w) if w is not None else pts
        if chain[-1] < chain[0]:
            chain.reverse()
        return Cycle(chain, collinear=True)
    cset = set(corners)
    h = len(corners)
    on_edge: List[List[int]] = [[] for _ in range(h)]
    for x in pts:
        if x in cset:
            continue
        for i in range(h):
            if o(corners[i], corners[(i + 1) % h], x) == 0:
                on_edge[i].append(x)
                break
    cyc: List[int] = []
    for i in range(h):
        u, v = corners[i], corners[(i + 1) % h]
        cyc.append(u)
        if on_edge[i]:
            w = corners[(i + 2) % h]
            ref = o(w, u, v)
            on_edge[i].sort(key=cmp_to_key(lambda a, b: -1 if o(w, a, b) == ref else 1))
            cyc.extend(on_edge[i])
    return Cycle(_rotate_min(cyc))


@dataclass
class ConvexLayers:
    layers: List[Cycle]
    layer_of: List[int]  # 0-based layer index per label
    tangent: Dict[int, int]
    jstar: int  # 0-based index of the outermost smallest layer with >= 2 points
    keypoints: List[int]
    position: Dict[int, int] = field(default_factory=dict)  # index within its layer

    @property
    def m(self) -> int:
        return len(self.layers)

    @property
    def k(self) -> int:
        return len(self.layers[self.jstar])

    @property
    def n(self) -> int:
        return len(self.layer_of)

    @property
    def sizes(self) -> List[int]:
        return [len(c) for c in self.layers]

    @property
    def east(self) -> bool:
        """True when the innermost layer is a single point (East Block case)."""
        return len(self.layers) > 1 and len(self.layers[-1]) == 1

    def succ(self, v: int) -> int:
        """Cycle successor of v (the CCW neighbour on proper layers)."""
        c = self.layers[self.layer_of[v]]
        return c[(self.position[v] + 1) % len(c)]

    def pred(self, v: int) -> int:
        c = self.layers[self.layer_of[v]]
        return c[(self.position[v] - 1) % len(c)]


def _tangents(o: OrientationOracle, outer: Cycle, inner: Cycle) -> Dict[int, int]:
    """tau(p): point t of ``inner`` with all of ``inner`` left of or on p->t, nearest on ties."""
    if len(inner) == 1:
        return {p: inner[0] for p in outer}
    if inner.collinear:
        e0, e1 = inner[0], inner[-1]
        res = {}
        for p in outer:
            s = o(p, e0, e1)
            if s > 0:
                res[p] = e0
            elif s < 0:
                res[p] = e1
            else:
                w = _find_witness(o, e0, e1, outer)
                res[p] = e0 if between(o, p, e0, e1, w) else e1
        return res
    q = list(inner)
    h = len(q)

    def fix_ties(p, t):
        while o(p, q[(t - 1) % h], q[t]) == 0:
            t = (t - 1) % h
        return t

    def tournament(p):
        t = 0
        for x in range(1, h):
            if o(p, q[t], q[x]) < 0:
                t = x
        return fix_ties(p, t)

    res = {}
    t = None
    for p in outer:
        if t is None:
            t = tournament(p)
        else:
            steps = 0
            while o(p, q[t], q[(t + 1) % h]) < 0 and steps < h:
                t = (t + 1) % h
                steps += 1
            t = fix_ties(p, t)
            if o(p, q[t], q[(t - 1) % h]) < 0 or o(p, q[t], q[(t + 1) % h]) < 0:
                t = tournament(p)
        res[p] = q[t]
    return res


def s_candidates(layers: ConvexLayers, v: int) -> List[int]:
    """Possible successors v' of v used by s(v); two only for interior chain points."""
    c = layers.layers[layers.layer_of[v]]
    if len(c) < 2:
        raise OrderTypeError(f"label {v} lies on a singleton layer")
    if not c.collinear:
        return [layers.succ(v)]
    i = layers.position[v]
    if i == 0:
        return [c[1]]
    if i == len(c) - 1:
        return [c[-2]]
    return [c[i + 1], c[i - 1]]


def s_of(o: OrientationOracle, layers: ConvexLayers, v: int, succ: Optional[int] = None) -> int:
    """s(v): the clockwise neighbour for hull points, otherwise the CCW-last
    point of the hull arc lying strictly right of the line v' -> v."""
    j = layers.layer_of[v]
    c1 = layers.layers[0]
    if j == 0:
        return layers.pred(v)
    if succ is None:
        succ = s_candidates(layers, v)[0]
    neg = [o(succ, v, q) < 0 for q in c1]
    h = len(c1)
    ends = [i for i in range(h) if neg[i] and not neg[(i + 1) % h]]
    if len(ends) != 1:
        raise DegenerateError(
            f"hull arc right of ({succ}->{v}) is not a single contiguous run: {neg}")
    return c1[ends[0]]


def keypoints(o: OrientationOracle, layers: ConvexLayers) -> List[int]:
    K = set()
    for p in layers.layers[layers.jstar]:
        for sc in s_candidates(layers, p):
            K.add(s_of(o, layers, p, sc))
    return sorted(K)


def convex_layers(o: OrientationOracle) -> ConvexLayers:
    if o.dim != 2:
        raise OrderTypeError(f"convex_layers needs a planar oracle, got dim={o.dim}")
    n = o.n
    remaining = list(range(n))
    layers: List[Cycle] = []
    while remaining:
        cyc = convex_hull_ccw(o, remaining)
        if cyc.collinear and not layers:
            raise CollinearError(f"all {n} points are collinear")
        if len(cyc) == 1:
            cyc = Cycle(cyc)
        layers.append(cyc)
        done = set(cyc)
        remaining = [x for x in remaining if x not in done]
        if cyc.collinear and remaining:
            raise DegenerateError("points remain inside a collinear layer; duplicate input?")
    layer_of = [0] * n
    position = {}
    for j, c in enumerate(layers):
        for i, v in enumerate(c):
            layer_of[v] = j
            position[v] = i
    tangent: Dict[int, int] = {}
    for j in range(len(layers) - 1):
        tangent.update(_tangents(o, layers[j], layers[j + 1]))
    sizes = [len(c) for c in layers]
    jstar = min((s, j) for j, s in enumerate(sizes) if s >= 2)[1]
    cl = ConvexLayers(layers, layer_of, tangent, jstar, [], position)
    cl.keypoints = keypoints(o, cl)
    return cl
